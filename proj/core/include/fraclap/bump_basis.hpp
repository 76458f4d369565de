#ifndef FRACLAP_BUMP_BASIS_HPP
#define FRACLAP_BUMP_BASIS_HPP

#include "fraclap/geometry.hpp"
#include "fraclap/interp.hpp"
#include "fraclap/params.hpp"

#include <unordered_map>
#include <vector>

namespace fraclap {

// C2 Wendland profile with support radius h: (1 - r/h)^4 (4 r/h + 1).
double wendland_c2(double r, double h);
// integral over R^n (n=2: pi h^2 / 7, n=3: 2 pi h^3 / 21)
double wendland_mass(int n, double h);
// second moment int |y|^2 psi dy
double wendland_second_moment(int n, double h);

// Radial table of the free-space Riesz potential of a single bump,
// p(rho) = (Gamma_sigma * psi)(x) at |x| = rho, built by graded quadrature
// with the r^(sigma-1) origin weight absorbed exactly by substitution.
// Beyond the table the two-term multipole expansion takes over.
class BumpPotentialTable {
  public:
    BumpPotentialTable(int n, double sigma, double h, double rho_tab_max);

    double operator()(double rho) const;
    double support_radius() const { return h_; }
    double table_radius() const { return rho_tab_max_; }

  private:
    double direct_value(double rho) const;
    int n_;
    double sigma_, h_, rho_tab_max_;
    double cr_, m0_, m2_, far_coef_;
    MonotoneCubic table_;
};

// Lattice basis of bumps covering the truncated exterior annulus.  Node
// distance to the boundary must exceed the support radius so every bump is
// supported in the exterior.
struct ExteriorBasis {
    int n = 2;
    double h = 0.25;            // lattice spacing == support radius
    std::vector<Point> nodes;
};

// Filters exterior_annulus_nodes down to the basis invariant
// (distance to boundary > support radius) and checks the half-box fit.
ExteriorBasis make_exterior_basis(const Domain& d, double R_trunc, double h,
                                  double box_length);

// Pairwise energy integrals A(d) = <psi_i, Gamma_sigma * psi_j> evaluated
// per distinct lattice distance (values repeat heavily on a lattice).
class PairIntegralCache {
  public:
    PairIntegralCache(const BumpPotentialTable& table, double h, int n);
    // d2_cells = squared distance in units of h^2 (exact integer on lattice)
    double value(long long d2_cells) const;
    void precompute(const std::vector<long long>& keys, int threads = 0);

  private:
    double integrate(double d) const;
    const BumpPotentialTable& table_;
    double h_;
    int n_;
    std::unordered_map<long long, double> cache_;
};

// local projection b_j = int psi_j F
double bump_project(const Point& node, double h, int n,
                    const std::function<double(const Point&)>& F);

} // namespace fraclap

#endif
