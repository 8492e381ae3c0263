#include "spinlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spinlab/experiments.hpp"

namespace spinlab {

namespace {

struct Options {
    std::string preset;  // empty: the subcommand default
    std::string spec;
    std::string set_S;
    std::string psi;
    std::string out;
    std::vector<std::string> modulus;
    u64 max_norm = 100000;
    u64 min_norm = 3;
    u64 seed = 1;
    int threads = 1;
    // subcommand specific
    u64 x0 = 1000;
    std::string m;
    std::string method = "products";
    u64 x = 300, y = 0;
    u64 q_min = 0, q_max = 0;
    int n = 3;
    u64 k = 1, l = 0;
    int r_choice = 0;
    int min_samples = 2;
    size_t witnesses = 10;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--preset", o.preset, "built-in field: cubic9, quintic11, E8 (govern16 and nogov default to E8, classrank to none)");
    sub->add_option("--spec", o.spec, "field spec JSON file (overrides --preset)");
    sub->add_option("--max-norm", o.max_norm, "norm bound X");
    sub->add_option("--set-S", o.set_S, "comma separated automorphism indices");
    sub->add_option("--psi", o.psi, "psi table JSON file");
    sub->add_option("--modulus", o.modulus, "modulus (repeatable where a list is accepted)");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--out", o.out, "output CSV path (default stdout)");
}

FieldPtr load_field(const Options& o, const char* fallback = "cubic9") {
    if (!o.spec.empty()) return Field::create(load_field_spec_file(o.spec));
    return load_preset(o.preset.empty() ? fallback : o.preset);
}

std::vector<int> parse_S(const Options& o, const Field& K) {
    std::vector<int> S;
    if (o.set_S.empty()) {
        // lowest-index automorphism of the largest order other than 2
        int best = -1;
        for (int s = 0; s < K.n(); ++s)
            if (K.order(s) > 2 && (best < 0 || K.order(s) > K.order(best))) best = s;
        if (best < 0) throw Error(ErrorKind::ConfigError, "no automorphism of order > 2; pass --set-S");
        return {best};
    }
    std::stringstream ss(o.set_S);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            S.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw Error(ErrorKind::ConfigError, "bad S index '" + tok + "'");
        }
    }
    return S;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpinConfig load_config(const Options& o, const Field& K) {
    Psi psi = o.psi.empty() ? Psi::make_trivial() : Psi::from_json(read_file(o.psi), K.n());
    return make_spin_config(K, parse_S(o, K), psi, o.seed);
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

FieldElement parse_element(const std::string& text, const Field& K) {
    FieldElement a = K.zero();
    std::stringstream ss(text);
    std::string tok;
    int i = 0;
    while (ss >> tok) {
        if (i >= K.n()) throw Error(ErrorKind::ConfigError, "element has too many coordinates");
        a[i++] = parse_int(tok);
    }
    if (i != K.n()) throw Error(ErrorKind::ConfigError, "element needs " + std::to_string(K.n()) + " coordinates");
    return a;
}

std::string field_name(const Field& K) { return K.name(); }

int cmd_validate(const Options& o, std::ostream& out) {
    auto K = load_field(o);
    const auto& r = K->report();
    out << "# validate field=" << field_name(*K) << "\n";
    out << "check,passed,detail\n";
    for (auto& c : r.checks) out << c.name << ',' << (c.passed ? 1 : 0) << ",\"" << c.detail << "\"\n";
    auto F = compute_bigF(*K);
    out << "# F=" << F.F << " unit_condition=" << r.unit_condition_verdict << " regulator=" << r.regulator << "\n";
    return r.ok() ? ExitOk : ExitAssertion;
}

int cmd_spins(const Options& o, std::ostream& out) {
    auto K = load_field(o);
    auto cfg = load_config(o, *K);
    out << "# spins field=" << field_name(*K) << " S=" << join(cfg.S) << " X=" << o.max_norm
        << " min=" << o.min_norm << " psi=" << (cfg.psi.trivial ? "trivial" : o.psi) << "\n";
    out << spin_csv_header(cfg) << "\n";
    for (auto& r : spin_stream(o.max_norm, cfg, K, o.threads, o.min_norm)) out << spin_csv_row(r) << "\n";
    return ExitOk;
}

int cmd_density(const Options& o, std::ostream& out) {
    auto K = load_field(o);
    auto cfg = load_config(o, *K);
    auto r = run_density(o.max_norm, cfg, K, o.threads);
    out << "# density field=" << field_name(*K) << " S=" << join(cfg.S) << " X=" << o.max_norm << "\n";
    out << density_csv(r);
    return ExitOk;
}

int cmd_type1(const Options& o, std::ostream& out) {
    auto K = load_field(o);
    auto cfg = load_config(o, *K);
    Type1Options t;
    if (o.x0 == 0) throw Error(ErrorKind::ConfigError, "--x0 must be positive");
    for (u64 X = o.x0; X < o.max_norm; X *= 2) t.checkpoints.push_back(X);
    t.checkpoints.push_back(o.max_norm);
    if (!o.m.empty()) t.m = parse_element(o.m, *K);
    if (o.method == "enumerate")
        t.method = Type1Method::Enumeration;
    else if (o.method != "products")
        throw Error(ErrorKind::ConfigError, "--method is products or enumerate");
    t.threads = o.threads;
    out << "# type1 field=" << field_name(*K) << " S=" << join(cfg.S) << " X0=" << o.x0 << " X=" << o.max_norm
        << " m=" << (o.m.empty() ? "1" : o.m) << " method=" << o.method << "\n";
    out << "checkpoint,value,bound,ratio\n";
    for (auto& c : type1_sum(t, cfg, *K))
        out << c.X << ',' << c.value << ',' << c.count << ',' << (c.count ? (double)std::labs(c.value) / c.count : 0.0)
            << "\n";
    return ExitOk;
}

int cmd_type2(const Options& o, std::ostream& out) {
    auto K = load_field(o);
    auto cfg = load_config(o, *K);
    u64 y = o.y ? o.y : o.x;
    size_t na = odd_ideals(o.x, *K).size(), nb = odd_ideals(y, *K).size();
    auto v = unimodular_sequence(na, o.seed);
    auto w = unimodular_sequence(nb, o.seed + 0x9e3779b97f4a7c15ULL);
    auto r = type2_sum(o.x, y, v, w, cfg, *K, o.threads);
    out << "# type2 field=" << field_name(*K) << " S=" << join(cfg.S) << " x=" << o.x << " y=" << y
        << " seed=" << o.seed << "\n";
    out << "x,y,value,pairs,max_abs_s,ratio\n";
    out << o.x << ',' << y << ',' << r.value << ',' << r.pairs << ',' << r.max_abs_s << ','
        << (r.pairs ? (double)std::labs(r.value) / r.pairs : 0.0) << "\n";
    return ExitOk;
}

int cmd_charsum(const Options& o, std::ostream& out) {
    u64 lo = o.q_min, hi = o.q_max;
    if (!o.modulus.empty()) {
        if (o.modulus.size() != 1) throw Error(ErrorKind::ConfigError, "charsum takes one --modulus");
        lo = hi = to_u64(parse_int(o.modulus[0]));
    }
    out << "# charsum q=" << lo << ".." << hi << " n=" << o.n << " k=" << o.k << " l=" << o.l << "\n";
    out << "q,N,k,l,max,exponent\n";
    bool single = lo == hi;
    for (u64 q = std::max<u64>(lo, 3); q <= hi; ++q) {
        CharSumScanConfig c{q, o.n, o.k, o.l};
        if (!single && (q % 2 == 0 || !is_squarefree(to_int(q)) || (o.k % q == 0))) continue;
        auto r = charsum_scan(c);
        out << r.q << ',' << r.N << ',' << r.k << ',' << r.l << ',' << r.max << ',' << r.exponent << "\n";
    }
    if (single && lo < 3) charsum_scan({lo, o.n, o.k, o.l});
    return ExitOk;
}

int cmd_classrank(const Options& o, std::ostream& out) {
    FieldPtr E;
    if (!o.spec.empty() || !o.preset.empty()) E = load_field(o);
    std::vector<u64> ps;
    for (u64 p : primes_up_to(o.max_norm))
        if (p % 4 == 1 && p >= o.min_norm) ps.push_back(p);
    auto hs = class_numbers_minus4p(ps, o.threads);
    out << "# classrank X=" << o.max_norm << " split_field=" << (E ? field_name(*E) : "none") << "\n";
    out << class_csv_header() << "\n";
    for (size_t i = 0; i < ps.size(); ++i) {
        ClassData d = class_data(ps[i], hs[i]);
        if (E) d.split_in_E = splits_completely(ps[i], *E) ? 1 : 0;
        out << class_csv_row(d) << "\n";
    }
    return ExitOk;
}

int cmd_govern16(const Options& o, std::ostream& out) {
    auto E = load_field(o, "E8");
    Govern16Options g;
    g.X = o.max_norm;
    g.r_choice = o.r_choice;
    g.min_samples = o.min_samples;
    g.threads = o.threads;
    if (!o.modulus.empty()) {
        g.moduli.clear();
        for (auto& m : o.modulus) g.moduli.push_back(parse_int(m));
    }
    auto r = run_govern16(g, *E);
    out << "# govern16 field=" << field_name(*E) << " X=" << o.max_norm << " r=" << r.r_index
        << " min_samples=" << o.min_samples << "\n";
    out << govern16_csv_header() << "\n";
    for (auto& row : r.rows) out << govern16_csv_row(row) << "\n";
    out << "# split=" << r.split << " b16=" << r.b16_count << " density=" << r.density
        << " eight_rank_ok=" << r.eight_rank_ok << "\n";
    for (auto& c : r.probes)
        out << "# cells modulus=" << c.modulus << " cells=" << c.cells << " insufficient=" << c.insufficient
            << " constant=" << c.constant << " inconsistent=" << c.inconsistent << "\n";
    return r.eight_rank_ok ? ExitOk : ExitAssertion;
}

int cmd_nogov(const Options& o, std::ostream& out) {
    auto E = load_field(o, "E8");
    u64 M = 480;
    if (!o.modulus.empty()) M = to_u64(parse_int(o.modulus[0]));
    auto pairs = run_nogoverning_witness(M, o.max_norm, o.witnesses, *E, o.threads);
    out << "# nogov field=" << field_name(*E) << " M=" << M << " X=" << o.max_norm << " wanted=" << o.witnesses
        << "\n";
    out << "p,q,b16_p,b16_q\n";
    for (auto& w : pairs) out << w.p << ',' << w.q << ',' << w.b16p << ',' << w.b16q << "\n";
    return ExitOk;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::ConfigError:
        case ErrorKind::BadModulus:
        case ErrorKind::EvenModulus:
        case ErrorKind::WrongResidueClass:
        case ErrorKind::NotFundamental:
        case ErrorKind::CeilingExceeded:
        case ErrorKind::StructuralFailure:
        case ErrorKind::UnitConditionFailed:
        case ErrorKind::FNotSquarefree:
            return ExitConfig;
        default:
            return ExitAssertion;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spin and class group experiments"};
    app.require_subcommand(1);
    Options o;
    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        add_common(s, o);
        return s;
    };
    sub("validate", "validate a field spec");
    auto* spins = sub("spins", "spin stream over split primes");
    spins->add_option("--min-norm", o.min_norm, "smallest rational prime");
    sub("density", "sign-pattern frequencies of the spin stream");
    auto* t1 = sub("type1", "type I sums at doubling checkpoints");
    t1->add_option("--x0", o.x0, "first checkpoint");
    t1->add_option("--m", o.m, "generator coordinates of m, space separated");
    t1->add_option("--method", o.method, "products or enumerate");
    auto* t2 = sub("type2", "bilinear sum with seeded unimodular coefficients");
    t2->add_option("--x", o.x, "norm bound of the first variable");
    t2->add_option("--y", o.y, "norm bound of the second variable (default x)");
    auto* cs = sub("charsum", "short character sum scan");
    cs->add_option("--q-min", o.q_min, "smallest modulus of a range");
    cs->add_option("--q-max", o.q_max, "largest modulus of a range");
    cs->add_option("--n", o.n, "window exponent, N = floor(q^(1/n))");
    cs->add_option("--k", o.k, "progression modulus");
    cs->add_option("--l", o.l, "progression residue");
    auto* cr = sub("classrank", "2-power ranks of Cl(-4p) for p = 1 mod 4");
    cr->add_option("--min-norm", o.min_norm, "smallest p");
    auto* g16 = sub("govern16", "16-rank against (r(pi)/pi) over primes split in E");
    g16->add_option("--r-choice", o.r_choice, "0 or 1: which order-4 automorphism");
    g16->add_option("--min-samples", o.min_samples, "samples needed before a cell counts");
    auto* ng = sub("nogov", "witness pairs against a governing modulus");
    ng->add_option("--witnesses", o.witnesses, "pairs required");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? ExitOk : ExitConfig;
    }
    std::ofstream file;
    std::ostream* dst = &out;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
            err << "cannot write " << o.out << "\n";
            return ExitConfig;
        }
        dst = &file;
    }
    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "validate") return cmd_validate(o, *dst);
        if (name == "spins") return cmd_spins(o, *dst);
        if (name == "density") return cmd_density(o, *dst);
        if (name == "type1") return cmd_type1(o, *dst);
        if (name == "type2") return cmd_type2(o, *dst);
        if (name == "charsum") return cmd_charsum(o, *dst);
        if (name == "classrank") return cmd_classrank(o, *dst);
        if (name == "govern16") return cmd_govern16(o, *dst);
        return cmd_nogov(o, *dst);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return ExitConfig;
    }
}

}  // namespace spinlab
