// Local model of a local system near a normal crossing point.
#pragma once

#include "nctk/filtration.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nctk {

struct AlphaComponent {
    std::vector<Q> alpha;          // residue exponent per branch, each in [0, 1)
    size_t dim = 0;
    std::vector<Matrix<Q>> n;      // one nilpotent per branch

    bool unipotent() const;
};

/// Bilinear pairing S(x, y) = x^T matrix y with S(x, y) = (-1)^parity S(y, x).
struct Pairing {
    Matrix<Q> matrix;
    int parity = 0;
};

struct NCModel {
    int branches = 0;
    int base_weight = 0;
    int perverse_shift = 0;
    std::vector<AlphaComponent> components;
    IncreasingFiltration w;
    std::optional<DecreasingFiltration> f;
    std::optional<Pairing> s;

    size_t dim() const;
    size_t offset(size_t component) const;
    /// Branch j operator on the whole space (block diagonal over components).
    Matrix<Q> n_total(int j) const;
    std::vector<Matrix<Q>> n_totals() const;
    bool fully_unipotent() const;
    bool w_is_pure() const;
};

/// Parses the JSON instance format. Throws Error(ParseError) naming the offending key.
NCModel parse_model(const std::string& text);
/// Sorted keys, canonical bases and lowest-terms scalars; byte-stable.
std::string canonical_json(const NCModel& model);

NCModel unipotent_part(const NCModel& model);
NCModel direct_sum(const NCModel& a, const NCModel& b);

/// Coordinates of s ∩ (block [offset, offset+dim)) inside the block.
template <class K>
Subspace<K> restrict_to_block(const Subspace<K>& s, size_t offset, size_t dim) {
    std::vector<Vec<K>> rows;
    for (size_t i = 0; i < dim; ++i) {
        Vec<K> e(s.ambient(), K(0));
        e[offset + i] = K(1);
        rows.push_back(std::move(e));
    }
    Subspace<K> cut = intersect(s, Subspace<K>::span(s.ambient(), rows));
    std::vector<Vec<K>> out;
    for (const auto& v : cut.vectors()) out.emplace_back(v.begin() + offset, v.begin() + offset + dim);
    return Subspace<K>::span(dim, out);
}

template <class K>
Subspace<K> embed_block(const Subspace<K>& s, size_t offset, size_t ambient) {
    std::vector<Vec<K>> out;
    for (const auto& v : s.vectors()) {
        Vec<K> e(ambient, K(0));
        std::copy(v.begin(), v.end(), e.begin() + offset);
        out.push_back(std::move(e));
    }
    return Subspace<K>::span(ambient, out);
}

struct CheckResult {
    std::string name;
    std::string status;   // "pass", "fail" or "not-evaluated"
    std::string code;     // error name on failure, empty otherwise
    std::string detail;
};

struct CheckReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    void add(std::string name, bool ok, std::string code = {}, std::string detail = {});
    void skip(std::string name, std::string detail);
};

CheckReport validate(const NCModel& model);

/// Nilpotent orbit, IMHS and polarization checks. Throws MissingHodgeFiltration without F.
CheckReport imhs_check(const NCModel& model, uint64_t seed = 0);

/// The sampled t-vectors used for t-independence: all-ones plus three seeded positive vectors.
std::vector<std::vector<Q>> sample_t_vectors(int branches, uint64_t seed);

}  // namespace nctk
