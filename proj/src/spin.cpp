#include "spinlab/spin.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

namespace spinlab {

namespace {

struct UnitSigns {
    std::vector<unsigned> torsion;  // sign masks of torsion elements
    std::vector<unsigned> usq;      // sign masks of unit square classes
};

const UnitSigns& unit_signs(const Field& K) {
    static std::mutex mu;
    static std::map<const Field*, std::unique_ptr<UnitSigns>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& c = cache[&K];
    if (!c) {
        c = std::make_unique<UnitSigns>();
        for (auto& t : K.torsion_elements()) c->torsion.push_back(K.totally_real() ? K.sign_mask(t) : 0);
        for (auto& v : K.unit_square_classes()) c->usq.push_back(K.totally_real() ? K.sign_mask(v) : 0);
    }
    return *c;
}

Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

FieldElement reduce_mod(const FieldElement& a, const Int& m) {
    FieldElement r = a;
    for (auto& c : r.coords) c = mod_pos(c, m);
    return r;
}

}  // namespace

std::vector<Int> Psi::reduce(const FieldElement& a) const {
    std::vector<Int> r;
    for (auto& c : a.coords) r.push_back(mod_pos(c, modulus));
    return r;
}

int Psi::operator()(const FieldElement& a, const Field& K) const {
    if (trivial) return 1;
    auto r = reduce(a);
    Int N = K.norm(FieldElement(r));
    Int g = gcd(N, modulus);
    if (g != 1) return 0;
    auto it = entries.find(r);
    return it == entries.end() ? default_value : it->second;
}

Psi Psi::from_json(const std::string& text, int n) {
    Psi psi;
    psi.trivial = false;
    try {
        auto j = nlohmann::json::parse(text);
        auto num = [](const nlohmann::json& v) {
            return v.is_string() ? parse_int(v.get<std::string>()) : Int((long)v.get<long>());
        };
        psi.modulus = num(j.at("modulus"));
        if (psi.modulus < 1) throw Error(ErrorKind::ConfigError, "psi modulus must be positive");
        psi.default_value = j.value("default", 0);
        for (auto& e : j.value("entries", nlohmann::json::array())) {
            std::vector<Int> key;
            for (auto& c : e.at("residue")) key.push_back(mod_pos(num(c), psi.modulus));
            if ((int)key.size() != n) throw Error(ErrorKind::ConfigError, "psi residue has wrong length");
            int v = e.at("value").get<int>();
            if (v < -1 || v > 1) throw Error(ErrorKind::ConfigError, "psi values must lie in {-1, 0, 1}");
            psi.entries[key] = v;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("psi table: ") + e.what());
    }
    return psi;
}

std::string Psi::to_json() const {
    nlohmann::json j;
    if (trivial) {
        j["trivial"] = true;
        return j.dump();
    }
    j["modulus"] = modulus.get_str();
    j["default"] = default_value;
    j["entries"] = nlohmann::json::array();
    for (auto& [k, v] : entries) {
        nlohmann::json r = nlohmann::json::array();
        for (auto& c : k) r.push_back(c.get_str());
        j["entries"].push_back({{"residue", r}, {"value", v}});
    }
    return j.dump();
}

bool check_S_valid(const std::vector<int>& S, const Field& K) {
    if (S.empty()) return false;
    std::set<int> seen;
    for (int s : S) {
        if (s < 0 || s >= K.n()) return false;
        if (!seen.insert(s).second) return false;
    }
    for (int s : S)
        if (seen.count(K.inverse(s))) return false;
    return true;
}

int automorphism_of_order(const Field& K, int order) {
    for (int s = 0; s < K.n(); ++s)
        if (K.order(s) == order) return s;
    throw Error(ErrorKind::ConfigError, "no automorphism of order " + std::to_string(order));
}

SpinConfig make_spin_config(const Field& K, std::vector<int> S, Psi psi, u64 seed) {
    if (!check_S_valid(S, K)) throw Error(ErrorKind::ConfigError, "S must be non-empty and avoid inverse pairs");
    SpinConfig cfg;
    cfg.S = std::move(S);
    cfg.F = compute_bigF(K);
    if (!psi.trivial) {
        if (cfg.F.F % psi.modulus != 0)
            throw Error(ErrorKind::ConfigError, "psi modulus " + psi.modulus.get_str() + " does not divide F");
        std::vector<FieldElement> squares;
        for (auto& u : K.units()) squares.push_back(reduce_mod(K.mul(u, u), psi.modulus));
        for (auto& t : K.torsion_elements()) squares.push_back(reduce_mod(K.mul(t, t), psi.modulus));
        std::vector<FieldElement> samples;
        for (auto& [k, v] : psi.entries) {
            samples.emplace_back(k);
            if (samples.size() >= 2000) break;
        }
        Rng rng(seed);
        for (int i = 0; i < 200; ++i) samples.push_back(random_odd_element(K, rng, 50));
        for (auto& x : samples)
            for (auto& u2 : squares)
                if (psi(reduce_mod(K.mul(x, u2), psi.modulus), K) != psi(x, K))
                    throw Error(ErrorKind::ConfigError, "psi is not invariant under unit squares at " + x.str());
    }
    cfg.psi = std::move(psi);
    return cfg;
}

int spin_sigma(int i, const FieldElement& a, const Field& K) {
    if (K.totally_real() && K.sign_mask(a) != 0) throw Error(ErrorKind::ConfigError, "spin argument must be totally positive");
    return residue_symbol(a, K.apply(i, a), K);
}

int joint_spin_element(const FieldElement& a, const SpinConfig& cfg, const Field& K) {
    int s = 1;
    for (int i : cfg.S) {
        s *= spin_sigma(i, a, K);
        if (s == 0) return 0;
    }
    return s;
}

UnitSymbols unit_symbols_at(const PrimeIdealData& Q, const Field& K) {
    UnitSymbols u;
    for (auto& t : K.torsion_elements()) u.torsion.push_back(residue_symbol_prime(t, Q));
    for (auto& e : K.units()) u.units.push_back(residue_symbol_prime(e, Q));
    return u;
}

namespace {

UnitSymbols unit_symbols_on(const std::vector<IdealFactor>& fac, const Field& K) {
    UnitSymbols u;
    u.torsion.assign(K.torsion_elements().size(), 1);
    u.units.assign(K.units().size(), 1);
    for (auto& [P, e] : fac) {
        if (!(e & 1)) continue;
        UnitSymbols q = unit_symbols_at(P, K);
        for (size_t i = 0; i < u.torsion.size(); ++i) u.torsion[i] *= q.torsion[i];
        for (size_t i = 0; i < u.units.size(); ++i) u.units[i] *= q.units[i];
    }
    return u;
}

}  // namespace

long s_from_symbols(const FieldElement& a, unsigned a_mask, const std::vector<int>& chi_a,
                    const std::vector<UnitSymbols>& unit_chi, const SpinConfig& cfg, const Field& K) {
    for (int c : chi_a)
        if (c == 0) return 0;
    const UnitSigns& sg = unit_signs(K);
    const auto& T = K.torsion_elements();
    const auto& V = K.unit_square_classes();
    int r = K.unit_rank();
    long total = 0;
    for (size_t t = 0; t < T.size(); ++t) {
        for (size_t b = 0; b < V.size(); ++b) {
            if (K.totally_real() && (a_mask ^ sg.torsion[t] ^ sg.usq[b]) != 0) continue;
            int prod = 1;
            for (size_t k = 0; k < chi_a.size(); ++k) {
                int x = chi_a[k] * unit_chi[k].torsion[t];
                for (int j = 0; j < r; ++j)
                    if (b >> j & 1) x *= unit_chi[k].units[j];
                prod *= x;
            }
            int w = cfg.psi.trivial ? 1 : cfg.psi(K.mul(K.mul(T[t], V[b]), reduce_mod(a, cfg.psi.modulus)), K);
            total += w * prod;
        }
    }
    return total;
}

long s_of_generator(const FieldElement& a, const SpinConfig& cfg, const Field& K) {
    std::vector<int> chi;
    std::vector<UnitSymbols> uc;
    for (int s : cfg.S) {
        auto fac = factor_principal(K.apply(s, a), K);
        chi.push_back(residue_symbol_factored(a, fac));
        if (chi.back() == 0) return 0;
        uc.push_back(unit_symbols_on(fac, K));
    }
    unsigned mask = K.totally_real() ? K.sign_mask(a) : 0;
    return s_from_symbols(a, mask, chi, uc, cfg, K);
}

long s_of_ideal(const IdealLattice& L, const SpinConfig& cfg, const Field& K) {
    if (mpz_even_p(L.norm.get_mpz_t())) return 0;
    return s_of_generator(short_generator(L, K), cfg, K);
}

std::vector<SpinRecord> spin_stream(u64 X, const SpinConfig& cfg, const FieldPtr& Kp, int threads, u64 lo) {
    const Field& K = *Kp;
    auto primes = split_primes(K, std::max<u64>(lo, 3), X);
    int n = K.n();
    std::vector<std::vector<SpinRecord>> out(primes.size());
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&]() {
        try {
            for (;;) {
                size_t idx = next++;
                if (idx >= primes.size()) return;
                const SplitPrime& sp = primes[idx];
                FieldElement pi = short_generator(prime_ideal_lattice(sp.orbit[0]), K);
                if (K.totally_real()) pi = make_totally_positive(pi, K);
                pi = reduce_to_domain(pi, K).element;
                auto& recs = out[idx];
                for (int i = 0; i < n; ++i) {
                    SpinRecord r;
                    r.p = sp.p;
                    r.orbit_index = i;
                    r.ideal_key = prime_ideal_lattice(sp.orbit[i]).key();
                    r.generator = K.apply(i, pi);
                    std::vector<UnitSymbols> uc;
                    for (int s : cfg.S) {
                        const PrimeIdealData& Q = sp.orbit[K.compose(s, i)];
                        r.spins.push_back(legendre_u64(residue_f1(r.generator, Q), sp.p));
                        uc.push_back(unit_symbols_at(Q, K));
                    }
                    unsigned mask = K.totally_real() ? K.sign_mask(r.generator) : 0;
                    r.s = s_from_symbols(r.generator, mask, r.spins, uc, cfg, K);
                    recs.push_back(std::move(r));
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
            next = primes.size();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    std::vector<SpinRecord> flat;
    for (auto& v : out)
        for (auto& r : v) flat.push_back(std::move(r));
    return flat;
}

std::string spin_csv_header(const SpinConfig& cfg) {
    std::string h = "p,ideal_key,generator_coords";
    for (size_t i = 0; i < cfg.S.size(); ++i) h += ",spin_sigma_" + std::to_string(i + 1);
    return h + ",s_value";
}

std::string spin_csv_row(const SpinRecord& r) {
    std::ostringstream o;
    o << r.p << "," << r.ideal_key << "," << r.generator.str();
    for (int s : r.spins) o << "," << s;
    o << "," << r.s;
    return o.str();
}

int phi(const FieldElement& a, const FieldElement& b, const std::vector<int>& S, const Field& K) {
    int v = 1;
    for (int s : S) {
        v *= residue_symbol(a, K.apply(s, b), K);
        v *= residue_symbol(a, K.apply(K.inverse(s), b), K);
        if (v == 0) return 0;
    }
    return v;
}

FieldElement phi_element(const FieldElement& b, const std::vector<int>& S, const Field& K) {
    FieldElement r = K.one();
    for (int s : S) r = K.mul(r, K.mul(K.apply(s, b), K.apply(K.inverse(s), b)));
    return r;
}

int factorization_identity_probe(const FieldElement& a, const FieldElement& b, const FieldElement& g, int sigma,
                                 const Field& K, const FieldElement& A, const FieldElement& B) {
    FieldElement q, aB, bA;
    if (!exact_quotient(K.mul(a, b), g, K, q)) throw Error(ErrorKind::ConfigError, "ab/g is not integral");
    if (!exact_quotient(K.mul(a, B), A, K, aB)) throw Error(ErrorKind::ConfigError, "A does not divide a");
    if (!exact_quotient(K.mul(b, A), B, K, bA)) throw Error(ErrorKind::ConfigError, "B does not divide b");
    int lhs = residue_symbol(q, K.apply(sigma, q), K);
    int rhs = residue_symbol(g, K.apply(sigma, g), K) * residue_symbol(K.mul(a, g), K.apply(sigma, aB), K) *
              residue_symbol(K.mul(b, g), K.apply(sigma, bA), K) * residue_symbol(a, K.apply(sigma, b), K) *
              residue_symbol(a, K.apply(K.inverse(sigma), b), K);
    if (lhs == 0 || rhs == 0) throw Error(ErrorKind::ZeroSymbolEncountered, "arguments share a prime");
    return lhs * rhs;
}

namespace {

struct PrimeKey {
    u64 p;
    Poly g;
    bool operator<(const PrimeKey& o) const { return p != o.p ? p < o.p : g < o.g; }
};

// Factorization of the ideal (phi(b)) as a product over sigma-conjugates.
std::map<PrimeKey, std::pair<PrimeIdealData, int>> phi_ideal(const FieldElement& b, const std::vector<int>& S,
                                                             const Field& K) {
    std::map<PrimeKey, std::pair<PrimeIdealData, int>> out;
    for (int s : S)
        for (int t : {s, K.inverse(s)})
            for (auto& [P, e] : factor_principal(K.apply(t, b), K)) {
                auto& slot = out[{P.p, P.g}];
                slot.first = P;
                slot.second += e;
            }
    return out;
}

}  // namespace

std::vector<FieldElement> residue_representatives(const PrimeIdealData& P, const Field& K) {
    int n = K.n();
    std::vector<u64> bound(n);
    for (int i = 0; i < n; ++i) bound[i] = to_u64(P.hnf[i][i]);
    std::vector<FieldElement> out;
    std::vector<u64> c(n, 0);
    for (;;) {
        FieldElement x = K.zero();
        for (int i = 0; i < n; ++i) x[i] = to_int(c[i]);
        out.push_back(x);
        int i = 0;
        while (i < n && ++c[i] == bound[i]) c[i++] = 0;
        if (i == n) break;
    }
    return out;
}

Int phi_character_sum(const FieldElement& b, const std::vector<int>& S, const Field& K) {
    Int N = abs(K.norm(b));
    auto fac = phi_ideal(b, S, K);
    Int total = 1;
    for (auto& [q, k] : factor_int(N)) {
        u64 p = to_u64(q);
        for (const auto& P : *cached_primes_above(p, K)) {
            auto it = fac.find({P.p, P.g});
            int e = it == fac.end() ? 0 : it->second.second;
            Int local = 0;
            if (e == 0) {
                local = P.norm();
            } else {
                for (auto& x : residue_representatives(P, K)) {
                    int c = residue_symbol_prime(x, P);
                    local += (e & 1) ? c : c * c;
                }
            }
            // O/P^{e(P|p) k} has N(P)^{e(P|p) k - 1} elements over each class mod P.
            Int lift;
            mpz_pow_ui(lift.get_mpz_t(), P.norm().get_mpz_t(), (unsigned long)(P.e * k - 1));
            total *= local * lift;
        }
    }
    return total;
}

Int phi_character_sum_bruteforce(const FieldElement& b, const std::vector<int>& S, const Field& K) {
    Int N = abs(K.norm(b));
    if (!N.fits_slong_p()) throw Error(ErrorKind::CeilingExceeded, "norm too large for brute force");
    long m = N.get_si();
    long cells = 1;
    for (int i = 0; i < K.n(); ++i) {
        cells *= m;
        if (cells > 20000000) throw Error(ErrorKind::CeilingExceeded, "too many residues for brute force");
    }
    std::vector<IdealFactor> den;
    for (auto& [key, pe] : phi_ideal(b, S, K)) den.push_back({pe.first, pe.second});
    Int total = 0;
    std::vector<long> c(K.n(), 0);
    for (;;) {
        FieldElement x = K.zero();
        for (int i = 0; i < K.n(); ++i) x[i] = c[i];
        total += residue_symbol_factored(x, den);
        int i = 0;
        while (i < K.n() && ++c[i] == m) c[i++] = 0;
        if (i == K.n()) break;
    }
    return total;
}

}  // namespace spinlab

namespace spinlab {

Modulus8Class random_odd_class(const Field& K, Rng& rng) {
    for (;;) {
        FieldElement a = K.zero();
        for (int i = 0; i < K.n(); ++i) a[i] = (long)rng.below(8);
        if (mpz_odd_p(K.norm(a).get_mpz_t())) return mod8(a);
    }
}

FieldElement sample_in_cell(const Modulus8Class& c, const Field& K, Rng& rng) {
    for (;;) {
        FieldElement a = random_in_class(c, K, rng);
        if (!K.totally_real()) {
            if (!a.is_zero()) return a;
            continue;
        }
        a[0] += 8 * 32;
        if (K.sign_mask(a) == 0) return a;
    }
}

ReciprocityTable derive_delta_table(int sigma, const Field& K, bool use_reps, const CellProbeOptions& opt) {
    FieldElement A = K.one(), B = K.one();
    if (use_reps) {
        if (K.spec().class_reps.size() < 2) throw Error(ErrorKind::ConfigError, "preset has no class representatives");
        A = K.spec().class_reps[0].generator;
        B = K.spec().class_reps[1].generator;
        if (K.totally_real()) {
            A = make_totally_positive(A, K);
            B = make_totally_positive(B, K);
        }
    }
    FieldElement g = K.mul(A, B);
    ReciprocityTable table;
    Rng rng(opt.seed);
    for (int i = 0; i < opt.cell_pairs; ++i) {
        Modulus8Class cx = random_odd_class(K, rng), cy = random_odd_class(K, rng);
        int got = 0;
        for (int attempt = 0; got < opt.samples_per_cell && attempt < 50 * opt.samples_per_cell; ++attempt) {
            FieldElement a = K.mul(A, sample_in_cell(cx, K, rng));
            FieldElement b = K.mul(B, sample_in_cell(cy, K, rng));
            int d;
            try {
                d = factorization_identity_probe(a, b, g, sigma, K, A, B);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::ZeroSymbolEncountered) continue;
                throw;
            }
            table.record(a, b, d);
            ++got;
        }
    }
    return table;
}

ReciprocityTable derive_phi_symmetry_table(const std::vector<int>& S, const Field& K, const CellProbeOptions& opt) {
    ReciprocityTable table;
    Rng rng(opt.seed);
    for (int i = 0; i < opt.cell_pairs; ++i) {
        Modulus8Class ca = random_odd_class(K, rng), cb = random_odd_class(K, rng);
        int got = 0;
        for (int attempt = 0; got < opt.samples_per_cell && attempt < 50 * opt.samples_per_cell; ++attempt) {
            FieldElement a = sample_in_cell(ca, K, rng), b = sample_in_cell(cb, K, rng);
            int x = phi(a, b, S, K);
            if (x == 0) continue;
            int y = phi(b, a, S, K);
            if (y == 0) throw Error(ErrorKind::StructuralFailure, "phi(a, b) != 0 but phi(b, a) = 0");
            table.record(a, b, x * y);
            ++got;
        }
    }
    return table;
}

BimultiplicativityReport check_phi_bimultiplicative(const std::vector<int>& S, const Field& K, int triples, u64 seed) {
    BimultiplicativityReport rep;
    Rng rng(seed);
    while (rep.triples < triples) {
        FieldElement a = random_odd_element(K, rng, 20), b1 = random_odd_element(K, rng, 20),
                     b2 = random_odd_element(K, rng, 20);
        if (phi(a, b1, S, K) == 0 || phi(a, b2, S, K) == 0 || phi(b1, a, S, K) == 0 || phi(b2, a, S, K) == 0) continue;
        ++rep.triples;
        if (phi(a, K.mul(b1, b2), S, K) != phi(a, b1, S, K) * phi(a, b2, S, K)) ++rep.failures;
        if (phi(K.mul(b1, b2), a, S, K) != phi(b1, a, S, K) * phi(b2, a, S, K)) ++rep.failures;
    }
    return rep;
}

VanishingReport check_phi_vanishing(const std::vector<int>& S, const Field& K, u64 X, long brute_cells) {
    VanishingReport rep;
    for (auto& I : enumerate_principal_odd_ideals(X, K)) {
        const FieldElement& b = I.generator;
        ++rep.ideals;
        Int N = abs(K.norm(b));
        FieldElement q;
        if (!exact_quotient(K.from_int(N), phi_element(b, S, K), K, q)) ++rep.divisibility_failures;
        Int sum = phi_character_sum(b, S, K);
        bool squarefull = is_squarefull(N);
        if (!squarefull) {
            ++rep.not_squarefull;
            if (sum != 0) ++rep.nonzero;
        }
        long cells = 1;
        bool small = N.fits_slong_p();
        for (int i = 0; small && i < K.n(); ++i) {
            cells *= N.get_si();
            small = cells <= brute_cells;
        }
        if (small) {
            ++rep.brute_checked;
            if (phi_character_sum_bruteforce(b, S, K) != sum) ++rep.brute_mismatch;
        }
    }
    return rep;
}

}  // namespace spinlab
