#include "spinlab/symbols.hpp"

#include <json.hpp>

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace spinlab {

namespace {

struct PrimeCache {
    std::shared_mutex mu;
    std::unordered_map<u64, std::shared_ptr<const std::vector<PrimeIdealData>>> map;
};

PrimeCache& cache_for(const Field& K) {
    static std::mutex mu;
    static std::map<const Field*, std::unique_ptr<PrimeCache>> caches;
    std::lock_guard<std::mutex> lock(mu);
    auto& c = caches[&K];
    if (!c) c = std::make_unique<PrimeCache>();
    return *c;
}

}  // namespace

std::shared_ptr<const std::vector<PrimeIdealData>> cached_primes_above(u64 p, const Field& K) {
    PrimeCache& c = cache_for(K);
    {
        std::shared_lock<std::shared_mutex> lock(c.mu);
        auto it = c.map.find(p);
        if (it != c.map.end()) return it->second;
    }
    auto v = std::make_shared<const std::vector<PrimeIdealData>>(prime_decomposition(p, K));
    std::unique_lock<std::shared_mutex> lock(c.mu);
    if (c.map.size() > 500000) c.map.clear();
    c.map.emplace(p, v);
    return v;
}

std::vector<IdealFactor> factor_principal(const FieldElement& b, const Field& K, const FactorBudget& budget) {
    Int N = abs(K.norm(b));
    if (N == 0) throw Error(ErrorKind::EvenArgument, "zero has no odd factorization");
    if (mpz_even_p(N.get_mpz_t())) throw Error(ErrorKind::EvenArgument, "norm " + N.get_str() + " is even");
    std::vector<IdealFactor> out;
    std::vector<std::pair<Int, int>> fac;
    try {
        fac = factor_int(N, budget);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::FactoringBudgetExceeded) throw;
        throw Error(ErrorKind::FactoringBudgetExceeded, e.what());
    }
    for (auto& [q, k] : fac) {
        if (!fits_u64(q)) throw Error(ErrorKind::FactoringBudgetExceeded, "prime factor beyond 64 bits");
        u64 p = to_u64(q);
        auto primes = cached_primes_above(p, K);
        int seen = 0;
        for (const auto& P : *primes) {
            if (seen == k) break;
            int v = valuation(b, P, K);
            if (v > 0) {
                out.push_back({P, v});
                seen += v * P.f;
            }
        }
        if (seen != k) throw Error(ErrorKind::StructuralFailure, "valuations do not account for the norm at " + q.get_str());
    }
    return out;
}

int residue_symbol_prime(const FieldElement& a, const PrimeIdealData& P) {
    if (P.f == 1) return legendre_u64(residue_f1(a, P), P.p);
    ResidueFieldElement r = residue_map(a, P);
    if (r.is_zero()) return 0;
    Int e = (P.norm() - 1) / 2;
    ResidueFieldElement s = r.pow(e);
    if (s.value.size() == 1 && s.value[0] == 1) return 1;
    if (s.value.size() == 1 && s.value[0] == P.p - 1) return -1;
    throw Error(ErrorKind::StructuralFailure, "Euler criterion gave a non-sign value");
}

int residue_symbol_factored(const FieldElement& a, const std::vector<IdealFactor>& b) {
    int s = 1;
    for (const auto& [P, e] : b) {
        int x = residue_symbol_prime(a, P);
        if (x == 0) return 0;
        if (e & 1) s *= x;
    }
    return s;
}

int residue_symbol(const FieldElement& a, const FieldElement& b, const Field& K, const FactorBudget& budget) {
    return residue_symbol_factored(a, factor_principal(b, K, budget));
}

int hilbert_infinity(const FieldElement& a, const FieldElement& b, const Field& K) {
    if (K.r1() == 0) return 1;
    unsigned both = K.sign_mask(a) & K.sign_mask(b);
    return __builtin_popcount(both) & 1 ? -1 : 1;
}

void ReciprocityTable::record(const FieldElement& a, const FieldElement& b, int value) {
    record(CellKey{mod8(a), mod8(b)}, value);
}

void ReciprocityTable::record(const CellKey& key, int value) {
    if (value != 1 && value != -1) throw Error(ErrorKind::ZeroSymbolEncountered, "cell value must be +-1");
    auto& c = cells_[key];
    if (c.samples > 0 && c.value != value)
        throw Error(ErrorKind::InconsistentCell, "cell (" + key.first.key() + ", " + key.second.key() + ") saw both signs");
    c.value = value;
    ++c.samples;
}

bool ReciprocityTable::populated(const CellKey& key) const {
    auto it = cells_.find(key);
    return it != cells_.end() && it->second.samples >= min_samples;
}

int ReciprocityTable::lookup(const FieldElement& a, const FieldElement& b) const {
    CellKey key{mod8(a), mod8(b)};
    if (!populated(key)) throw Error(ErrorKind::UnpopulatedCell, "cell (" + key.first.key() + ", " + key.second.key() + ")");
    return cells_.at(key).value;
}

std::vector<CellKey> ReciprocityTable::populated_cells() const {
    std::vector<CellKey> out;
    for (auto& [k, c] : cells_)
        if (c.samples >= min_samples) out.push_back(k);
    return out;
}

std::string ReciprocityTable::to_json() const {
    nlohmann::json j;
    j["min_samples"] = min_samples;
    j["cells"] = nlohmann::json::array();
    for (auto& [k, c] : cells_)
        j["cells"].push_back({{"a", k.first.key()}, {"b", k.second.key()}, {"value", c.value}, {"samples", c.samples}});
    return j.dump(1);
}

ReciprocityTable ReciprocityTable::from_json(const std::string& text) {
    ReciprocityTable t;
    try {
        auto j = nlohmann::json::parse(text);
        t.min_samples = j.value("min_samples", 20L);
        auto decode = [](const std::string& s) {
            Modulus8Class m;
            for (char ch : s) {
                if (ch < '0' || ch > '7') throw Error(ErrorKind::ConfigError, "bad residue key " + s);
                m.residues.push_back(ch - '0');
            }
            return m;
        };
        for (auto& c : j.at("cells")) {
            CellKey key{decode(c.at("a").get<std::string>()), decode(c.at("b").get<std::string>())};
            CellEntry e{c.at("value").get<int>(), c.at("samples").get<long>()};
            if (e.value != 1 && e.value != -1) throw Error(ErrorKind::ConfigError, "cell value must be +-1");
            t.cells_[key] = e;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("reciprocity table: ") + e.what());
    }
    return t;
}

FieldElement random_in_class(const Modulus8Class& base, const Field& K, Rng& rng) {
    FieldElement a = K.zero();
    for (int i = 0; i < K.n(); ++i) {
        long r = base.residues[i];
        if (r >= 4) r -= 8;
        a[i] = r + 8 * rng.range(-1, 1);
    }
    return a;
}

FieldElement random_odd_element(const Field& K, Rng& rng, long bound) {
    for (;;) {
        FieldElement a = K.zero();
        for (int i = 0; i < K.n(); ++i) a[i] = (long)rng.range(-bound, bound);
        Int N = K.norm(a);
        if (N != 0 && mpz_odd_p(N.get_mpz_t())) return a;
    }
}

ReciprocityTable derive_mu2_table(const Field& K, const Mu2Options& opt) {
    if (opt.samples_per_cell < 20) throw Error(ErrorKind::ConfigError, "at least 20 samples per cell are required");
    ReciprocityTable table;
    Rng rng(opt.seed);
    auto random_class = [&]() {
        if (opt.rational_cells) {
            FieldElement a = K.from_int(Int((long)(2 * rng.below(4) + 1)));
            return mod8(a);
        }
        for (;;) {
            FieldElement a = K.zero();
            for (int i = 0; i < K.n(); ++i) a[i] = (long)rng.below(8);
            Int N = K.norm(a);
            if (mpz_odd_p(N.get_mpz_t())) return mod8(a);
        }
    };
    auto draw = [&](const Modulus8Class& c) {
        if (!opt.rational_cells) return random_in_class(c, K, rng);
        return K.from_int(Int(c.residues[0] + 8 * (long)rng.range(-60, 60)));
    };
    for (int i = 0; i < opt.cell_pairs; ++i) {
        Modulus8Class ca = random_class(), cb = random_class();
        int got = 0;
        for (int attempt = 0; got < opt.samples_per_cell && attempt < 50 * opt.samples_per_cell; ++attempt) {
            FieldElement a = draw(ca), b = draw(cb);
            if (a.is_zero() || b.is_zero()) continue;
            int x = residue_symbol(a, b, K);
            if (x == 0) continue;
            int y = residue_symbol(b, a, K);
            table.record(a, b, x * y * hilbert_infinity(a, b, K));
            ++got;
        }
    }
    return table;
}

bool check_reciprocity(const FieldElement& a, const FieldElement& b, const ReciprocityTable& table, const Field& K) {
    int mu2 = table.lookup(a, b);
    int x = residue_symbol(a, b, K);
    int y = residue_symbol(b, a, K);
    if (x == 0 || y == 0) throw Error(ErrorKind::ZeroSymbolEncountered, "arguments are not coprime");
    return x == mu2 * hilbert_infinity(a, b, K) * y;
}

}  // namespace spinlab
