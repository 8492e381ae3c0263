#include "spinlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinlab/parallel.hpp"

namespace spinlab {

DensityReport run_density(u64 X, const SpinConfig& cfg, const FieldPtr& K, int threads,
                          std::vector<SpinRecord>* records) {
    DensityReport r;
    r.S = cfg.S;
    auto recs = spin_stream(X, cfg, K, threads);
    size_t t = cfg.S.size();
    for (auto& rec : recs) {
        std::string pat;
        for (int v : rec.spins) pat += v > 0 ? '+' : v < 0 ? '-' : '0';
        ++r.counts[pat];
        ++r.records;
    }
    long signed_total = 0;
    for (auto& [pat, c] : r.counts)
        if (pat.find('0') == std::string::npos) signed_total += c;
    long cells = 1L << t;
    double expect = (double)signed_total / cells;
    if (signed_total > 0) {
        for (long m = 0; m < cells; ++m) {
            std::string pat;
            for (size_t i = 0; i < t; ++i) pat += (m >> i) & 1 ? '-' : '+';
            auto it = r.counts.find(pat);
            double o = it == r.counts.end() ? 0 : (double)it->second;
            r.chi_square += (o - expect) * (o - expect) / expect;
        }
    }
    r.signed_records = signed_total;
    r.dof = (int)cells - 1;
    if (records) *records = std::move(recs);
    return r;
}

double pattern_frequency(const DensityReport& r, const std::string& pattern) {
    auto it = r.counts.find(pattern);
    if (it == r.counts.end() || r.signed_records == 0) return 0;
    return (double)it->second / r.signed_records;
}

std::string density_csv(const DensityReport& r) {
    std::ostringstream out;
    out << "pattern,count,frequency\n";
    for (auto& [pat, c] : r.counts) out << pat << ',' << c << ',' << pattern_frequency(r, pat) << '\n';
    out << "# records=" << r.records << " signed=" << r.signed_records << " chi_square=" << r.chi_square << " dof=" << r.dof << '\n';
    return out.str();
}

std::vector<ESplitPrime> e_split_b16(u64 X, const Field& E, int threads) {
    std::vector<u64> cand;
    for (u64 p : primes_up_to(X))
        if (p % 8 == 1) cand.push_back(p);
    std::vector<char> split(cand.size(), 0);
    parallel_for(cand.size(), threads, [&](size_t i) { split[i] = splits_completely(cand[i], E); });
    std::vector<u64> ps;
    for (size_t i = 0; i < cand.size(); ++i)
        if (split[i]) ps.push_back(cand[i]);
    auto hs = class_numbers_minus4p(ps, threads);
    std::vector<ESplitPrime> out;
    for (size_t i = 0; i < ps.size(); ++i) out.push_back({ps[i], hs[i], hs[i] % 16 == 0 ? 1 : 0});
    return out;
}

int order4_automorphism(const Field& E, int choice) {
    std::vector<int> idx;
    int n = E.n();
    for (int s = 0; s < n; ++s) {
        if (E.order(s) != 4) continue;
        // r^2 fixes the cyclotomic subfield, so r must move something r^2 fixes
        int s2 = E.compose(s, s);
        bool moves = false;
        for (int i = 0; i < n && !moves; ++i) {
            FieldElement w = E.zero();
            w[i] = 1;
            FieldElement x = E.add(w, E.apply(s2, w));
            moves = !(E.apply(s, x) == x);
        }
        if (moves) idx.push_back(s);
    }
    if (idx.size() < 2 || choice < 0 || choice > 1)
        throw Error(ErrorKind::ConfigError, "no order-4 automorphism for the requested choice");
    return idx[choice];
}

Govern16Report run_govern16(const Govern16Options& opt, const Field& E) {
    Govern16Report rep;
    rep.r_index = order4_automorphism(E, opt.r_choice);
    auto data = e_split_b16(opt.X, E, opt.threads);
    rep.rows.resize(data.size());
    std::vector<FieldElement> gens(data.size());
    parallel_for(data.size(), opt.threads, [&](size_t i) {
        SplitPrime sp = split_prime_data(data[i].p, E);
        FieldElement pi = short_generator(prime_ideal_lattice(sp.orbit[0]), E);
        const PrimeIdealData& P = sp.orbit[0];
        Govern16Row& row = rep.rows[i];
        row.p = data[i].p;
        row.pi = pi.str();
        row.cell = mod8(pi).key();
        row.s = legendre_u64(residue_f1(E.apply(rep.r_index, pi), P), P.p);
        row.b16 = data[i].b16;
        gens[i] = pi;
    });
    rep.split = (long)data.size();
    for (auto& d : data) {
        rep.b16_count += d.b16;
        if (d.h % 8 != 0) rep.eight_rank_ok = false;
    }
    rep.density = rep.split ? (double)rep.b16_count / rep.split : 0;
    for (const Int& F : opt.moduli) {
        if (F < 2) throw Error(ErrorKind::ConfigError, "cell modulus must be at least 2");
        std::map<std::string, std::pair<long, long>> cells;  // (+1 count, -1 count) of (2 b16 - 1) s
        for (size_t i = 0; i < gens.size(); ++i) {
            std::string key;
            for (auto c : gens[i].coords) {
                Int r = Int(c) % F;
                if (r < 0) r += F;
                key += r.get_str() + ' ';
            }
            int v = (2 * rep.rows[i].b16 - 1) * rep.rows[i].s;
            auto& cell = cells[key];
            (v > 0 ? cell.first : cell.second)++;
        }
        CellConstancy cc;
        cc.modulus = F;
        cc.cells = (long)cells.size();
        for (auto& [k, c] : cells) {
            if (c.first + c.second < opt.min_samples)
                ++cc.insufficient;
            else if (c.first && c.second)
                ++cc.inconsistent;
            else
                ++cc.constant;
        }
        rep.probes.push_back(cc);
    }
    return rep;
}

std::string govern16_csv_header() { return "p,pi,pi_mod8,s,b16"; }

std::string govern16_csv_row(const Govern16Row& r) {
    std::ostringstream out;
    out << r.p << ',' << r.pi << ',' << r.cell << ',' << r.s << ',' << r.b16;
    return out.str();
}

std::vector<WitnessPair> run_nogoverning_witness(u64 M, u64 X, size_t wanted, const Field& E, int threads) {
    if (M < 8) throw Error(ErrorKind::ConfigError, "modulus must be at least 8");
    auto data = e_split_b16(X, E, threads);
    std::map<u64, const ESplitPrime*> last;
    std::vector<WitnessPair> out;
    for (auto& d : data) {
        auto it = last.find(d.p % M);
        if (it != last.end() && it->second->b16 != d.b16)
            out.push_back({it->second->p, d.p, it->second->b16, d.b16});
        last[d.p % M] = &d;
    }
    if (out.size() < wanted)
        throw Error(ErrorKind::InsufficientWitnesses,
                    "found " + std::to_string(out.size()) + " witness pairs, wanted " + std::to_string(wanted));
    return out;
}

}  // namespace spinlab
