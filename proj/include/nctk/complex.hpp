// Bounded filtered cochain complexes of subquotient-presented spaces.
#pragma once

#include "nctk/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nctk {

struct SlotLabel {
    std::string name;
    size_t offset = 0;
    size_t dim = 0;
    bool operator==(const SlotLabel& o) const { return name == o.name && offset == o.offset && dim == o.dim; }
};

/// One degree: the space sub/quot inside a coordinate space, with W (and F) between quot and sub.
struct Term {
    size_t ambient = 0;
    Subspace<Q> sub, quot;
    IncreasingFiltration w;
    std::optional<DecreasingFiltration> f;
    std::vector<SlotLabel> slots;

    size_t dim() const { return sub.dim() - quot.dim(); }
    static Term zero(size_t ambient = 0);
    bool operator==(const Term& o) const;
};

class FilteredComplex {
public:
    FilteredComplex() = default;
    FilteredComplex(int lo, std::vector<Term> terms, std::vector<Matrix<Q>> d, int weight_offset);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
    bool empty() const { return terms_.empty(); }
    int weight_offset() const { return offset_; }
    bool has_f() const;

    /// Zero term outside [lo, hi].
    const Term& term(int k) const;
    /// d_k: term(k) -> term(k+1) on ambient coordinates; zero outside the range.
    Matrix<Q> d(int k) const;

    /// d∘d = 0, d respects sub and quot, every W and F step is a subcomplex. Throws Internal.
    void verify() const;
    long euler_terms() const;

    bool operator==(const FilteredComplex& o) const;

    /// Degree range covering the stored weight steps (for weight sweeps).
    std::pair<int, int> weight_range() const;

private:
    int lo_ = 0;
    std::vector<Term> terms_;
    std::vector<Matrix<Q>> d_;
    int offset_ = 0;
    Term zero_;
};

/// Degree-wise linear maps between the ambients of two complexes.
struct ComplexMap {
    int lo = 0;
    std::vector<Matrix<Q>> m;  // m[k - lo]: ambient of source(k) -> ambient of target(k)
    Matrix<Q> at(int k, size_t src_ambient, size_t tgt_ambient) const;
};

ComplexMap compose(const ComplexMap& g, const ComplexMap& f, const FilteredComplex& a, const FilteredComplex& b,
                   const FilteredComplex& c);
/// Whether f is a chain map source -> target on the subquotients.
bool is_chain_map(const ComplexMap& f, const FilteredComplex& src, const FilteredComplex& tgt);

// ---------------------------------------------------------------- builders

/// Branch subsets of size k, lexicographic, 0-based.
std::vector<std::vector<int>> subsets_of_size(int n, int k);
std::string subset_name(const std::vector<int>& k);

FilteredComplex build_omega(const NCModel& model);
FilteredComplex build_ic(const NCModel& model);
/// z: 0-based branch indices.
FilteredComplex build_ic_log(const NCModel& model, const std::vector<int>& z);
/// Identity inclusion of a subcomplex with the same ambients.
ComplexMap inclusion_map(const FilteredComplex& sub, const FilteredComplex& super);

/// Mixed cone of f: a -> b; W_r = W_{r-1}(a)[1] ⊕ W_r(b), after aligning weight offsets.
FilteredComplex cone(const ComplexMap& f, const FilteredComplex& a, const FilteredComplex& b);
/// C[s]: term k = C(k+s), d = (-1)^s d, W_i = W_{i-s}.
FilteredComplex shift(const FilteredComplex& c, int s);
/// super / sub for a subcomplex with identical ambients and differentials.
FilteredComplex quotient(const FilteredComplex& super, const FilteredComplex& sub);
/// Gr^W_r as a complex (sub = W_r, quot = W_{r-1}); W pure, F induced.
FilteredComplex graded_piece(const FilteredComplex& c, int r);

/// Degree center used by duality for a model with the given perverse shift.
int duality_center(int perverse_shift);
/// term'(k) = dual of term(center - k); weights reflected about a.
FilteredComplex dualize(const FilteredComplex& c, int a, int center);

FilteredComplex i_shriek(const NCModel& model, const std::vector<int>& z);
/// Requires a nondegenerate pairing.
FilteredComplex i_star(const NCModel& model, const std::vector<int>& z);

// ---------------------------------------------------------------- cohomology

struct DegreeCohomology {
    int degree = 0;
    size_t dim = 0;
    std::map<int, size_t> weights;  // weight -> dim Gr^W
    std::map<int, size_t> hodge;    // p -> dim Gr_F^p, when F is present
};

struct CohomologyReport {
    std::vector<DegreeCohomology> degrees;  // every degree of the complex, zeros included
    bool has_hodge = false;
    long euler_terms = 0;
    long euler_cohomology = 0;

    size_t dim(int degree) const;
    std::map<int, size_t> weights(int degree) const;
};

/// Cohomology with induced filtrations; weight = filtration index + offset + degree.
CohomologyReport cohomology(const FilteredComplex& c, bool with_hodge = true);

/// Boundaries + quot in degree k (the zero class of H^k), and the cycles.
Subspace<Q> cycles(const FilteredComplex& c, int k);
Subspace<Q> boundaries(const FilteredComplex& c, int k);

}  // namespace nctk
