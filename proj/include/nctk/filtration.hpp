// Increasing and decreasing filtrations; monodromy, relative monodromy,
// star, shriek, dual and iterated star filtrations.
#pragma once

#include "nctk/linalg.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nctk {

using Step = std::pair<int, Subspace<Q>>;

/**
 * @brief Increasing filtration bottom ⊆ ... ⊆ top of an ambient space.
 *
 * Stored steps are the jumps: weight k holds W_k, and W_j for j between
 * two stored weights equals the lower one. Below every step the value is
 * `bottom`; the last step equals `top`.
 */
class IncreasingFiltration {
public:
    IncreasingFiltration() = default;
    /// Pure filtration of the zero space when ambient = 0, else trivial pure at weight 0.
    explicit IncreasingFiltration(size_t ambient);
    IncreasingFiltration(Subspace<Q> bottom, Subspace<Q> top, std::vector<Step> steps);

    static IncreasingFiltration pure(size_t ambient, int weight);
    /// Evaluates fn on [lo, hi]; fn(hi) must equal top.
    static IncreasingFiltration from_function(const Subspace<Q>& bottom, const Subspace<Q>& top, int lo, int hi,
                                              const std::function<Subspace<Q>(int)>& fn);

    size_t ambient() const { return top_.ambient(); }
    const Subspace<Q>& bottom() const { return bottom_; }
    const Subspace<Q>& top() const { return top_; }
    const std::vector<Step>& steps() const { return steps_; }
    bool has_jumps() const { return !steps_.empty(); }
    /// Lowest and highest stored weight; (0, 0) when there are no jumps.
    int lo() const { return steps_.empty() ? 0 : steps_.front().first; }
    int hi() const { return steps_.empty() ? 0 : steps_.back().first; }

    const Subspace<Q>& at(int k) const;
    /// weight -> dim Gr_k, nonzero entries only.
    std::map<int, size_t> gr_dims() const;

    /// Filtration induced on the subquotient, in its coordinates.
    IncreasingFiltration on_subquotient(const Subquotient<Q>& sq) const;
    /// Weights shifted: result_k = this_{k - by}.
    IncreasingFiltration shifted(int by) const;

    bool operator==(const IncreasingFiltration& o) const;
    bool operator!=(const IncreasingFiltration& o) const { return !(*this == o); }

private:
    Subspace<Q> bottom_, top_;
    std::vector<Step> steps_;
};

using StepQI = std::pair<int, Subspace<QI>>;

/**
 * @brief Decreasing filtration top = F^p (p small) ⊇ ... ⊇ bottom (p large), over Q(i).
 *
 * F^p is the stored value at the smallest stored index ≥ p, or bottom past the last.
 */
class DecreasingFiltration {
public:
    DecreasingFiltration() = default;
    DecreasingFiltration(Subspace<QI> bottom, Subspace<QI> top, std::vector<StepQI> steps);
    static DecreasingFiltration from_function(const Subspace<QI>& bottom, const Subspace<QI>& top, int lo, int hi,
                                              const std::function<Subspace<QI>(int)>& fn);

    size_t ambient() const { return top_.ambient(); }
    const Subspace<QI>& bottom() const { return bottom_; }
    const Subspace<QI>& top() const { return top_; }
    const std::vector<StepQI>& steps() const { return steps_; }
    int lo() const { return steps_.empty() ? 0 : steps_.front().first; }
    int hi() const { return steps_.empty() ? 0 : steps_.back().first; }

    const Subspace<QI>& at(int p) const;
    DecreasingFiltration on_subquotient(const Subquotient<QI>& sq) const;
    DecreasingFiltration shifted(int by) const;  // result^p = this^{p - by}

    bool operator==(const DecreasingFiltration& o) const;
    bool operator!=(const DecreasingFiltration& o) const { return !(*this == o); }

private:
    Subspace<QI> bottom_, top_;
    std::vector<StepQI> steps_;
};

/// Arbitrary weight -> subspace assignment, used to test candidate filtrations.
using WeightLookup = std::function<Subspace<Q>(int)>;

struct AxiomCheck {
    bool ok = true;
    std::string reason;
};

/// Checks the relative monodromy axioms for candidate M (exhaustive on [lo, hi]).
AxiomCheck check_relative_monodromy(const Matrix<Q>& n, const IncreasingFiltration& w, const WeightLookup& m,
                                    int lo, int hi);
AxiomCheck check_relative_monodromy(const Matrix<Q>& n, const IncreasingFiltration& w, const IncreasingFiltration& m);
/// Monodromy axioms centered at `center` (relative to the pure filtration).
AxiomCheck check_monodromy(const Matrix<Q>& n, int center, const WeightLookup& m, int lo, int hi);

void require_nilpotent(const Matrix<Q>& n, const char* module);
void require_preserves(const Matrix<Q>& n, const IncreasingFiltration& w, const char* module);

IncreasingFiltration monodromy_filtration(const Matrix<Q>& n, int center);
IncreasingFiltration relative_monodromy_filtration(const Matrix<Q>& n, const IncreasingFiltration& w);

/// N*W; asserts both displayed expressions agree.
IncreasingFiltration star(const Matrix<Q>& n, const IncreasingFiltration& w);
/// The second expression N W_{k+1} + M_k ∩ W_{k+1}, exposed for testing.
IncreasingFiltration star_alternate(const Matrix<Q>& n, const IncreasingFiltration& w);
IncreasingFiltration shriek(const Matrix<Q>& n, const IncreasingFiltration& w);
/// (W*)_k = annihilator of W_{-k-1} under the coordinate pairing.
IncreasingFiltration dual_filtration(const IncreasingFiltration& w);
/// W^J for the ordered branch list J (0-based); the last branch is applied first.
IncreasingFiltration iterated_star(const std::vector<Matrix<Q>>& ns, const IncreasingFiltration& w,
                                   const std::vector<int>& order);

Matrix<Q> sum_of(const std::vector<Matrix<Q>>& ns, const std::vector<int>& subset, size_t dim);
Matrix<Q> product_of(const std::vector<Matrix<Q>>& ns, const std::vector<int>& subset, size_t dim);

}  // namespace nctk
