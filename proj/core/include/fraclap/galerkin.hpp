#ifndef FRACLAP_GALERKIN_HPP
#define FRACLAP_GALERKIN_HPP

#include "fraclap/bump_basis.hpp"
#include "fraclap/geometry.hpp"
#include "fraclap/grid.hpp"
#include "fraclap/lp.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace fraclap {

// Dense symmetric system A_jk = <psi_j, Gamma_2s * psi_k>, b_j = <psi_j, F>.
struct GramSystem {
    std::size_t size = 0;
    std::vector<double> matrix; // row-major, symmetric positive definite
    std::vector<double> rhs;
    std::vector<double> coef;
    double solve_residual = 0.0;
    double min_eig_estimate = 0.0;
};

// Discrete exterior problem bound to one basis resolution.
class ExteriorSolver {
  public:
    ExteriorSolver(const Domain& d, const SolverParams& params,
                   double R_trunc, double h);

    const ExteriorBasis& basis() const { return basis_; }
    const BumpPotentialTable& potential() const { return *p_table_; }

    // matrix assembly (cached pair integrals; symmetric by construction)
    void assemble_matrix(GramSystem& sys, int threads = 0) const;
    void assemble_rhs(GramSystem& sys,
                      const std::function<double(const Point&)>& F) const;

    // SPD factorization; residual contract ||Ac-b|| / ||b|| < 1e-10
    static void solve_exterior(GramSystem& sys);

    // free-space reconstruction u(x) = sum_j c_j (Gamma_2s * psi_j)(x)
    double reconstruct_at(const std::vector<double>& coef,
                          const Point& x) const;

    // periodization of the free-space solution onto the grid (norms and
    // weak-residual tests); node lattice must align with the grid
    GridFunction reconstruct_u(const std::vector<double>& coef,
                               int image_shells = 4) const;

    // max |u - F| and rms over exterior sample points in the annulus
    struct TraceError {
        double max_err = 0.0;
        double rms = 0.0;
    };
    TraceError trace_error(const std::vector<double>& coef,
                           const std::function<double(const Point&)>& F) const;

    double R_trunc() const { return R_trunc_; }

  private:
    Domain domain_;
    SolverParams params_;
    double R_trunc_;
    ExteriorBasis basis_;
    std::shared_ptr<BumpPotentialTable> p_table_;
    std::shared_ptr<PairIntegralCache> pair_cache_;
    std::vector<long long> pair_keys_;
};

// Weak-solution residual: max over a fixed family of mean-zero interior
// test functions (bump dipoles strictly inside Omega) of
// |<Delta^s u, psi>| / (||u||_s ||psi||_s) in the two_pi norm.  Mean-zero
// tests cancel the torus zero mode, which the periodic surrogate cannot
// represent.  Throws if a test support would touch the boundary.
double weak_residual(const GridFunction& u, const Domain& d, double s,
                     const LPFilterBank& bank);

// ||u||_{H^s} / ||F||, with ||F|| the zero-extension representative norm
// (a fixed extension; upper bound of the restriction norm).
// F_ext is the zero-extended exterior datum on the grid.
double stability_ratio(const GridFunction& u, const GridFunction& F_ext,
                       double s, const LPFilterBank& bank);

// inverse-power estimate of the smallest eigenvalue of the Gram matrix
double gram_min_eig(const GramSystem& sys, int iterations = 40);

} // namespace fraclap

#endif
