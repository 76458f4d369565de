#ifndef FRACLAP_POISSON_HPP
#define FRACLAP_POISSON_HPP

#include "fraclap/geometry.hpp"
#include "fraclap/grid.hpp"

#include <functional>
#include <limits>

namespace fraclap {

// Exit-position density of the 2s-stable process from a ball:
//   K(x,y) = C(n,s) [(r^2-|x-c|^2)/(|y-c|^2-r^2)]^s |x-y|^-n
// for x inside and y strictly outside.  Validated against its unit mass and
// the Monte Carlo exit law before being used as an oracle elsewhere.
struct BallKernel {
    int n = 2;
    double s = 0.5;
    Ball ball;
};

// C(n,s) = Gamma(n/2) pi^(-n/2-1) sin(pi s)
double ball_kernel_constant(int n, double s);

double ball_kernel_eval(const BallKernel& k, const Point& x, const Point& y);

// Radial CDF of the exit position sampled from the center, in the scale
// rho = |y-c|/r: F(rho) = 1 - I_{rho^-2}(s, 1-s).  Dimension-independent.
double radial_exit_cdf(double s, double rho);
// probability of rho in (rho1, rho2]
double radial_exit_band(double s, double rho1, double rho2);

struct BallQuadratureOptions {
    int n_angular = 512;     // trapezoid points on the circle (n=2)
    int n_polar = 96;        // polar panels for n=3 product rule
    int radial_panels = 48;  // graded panels in the edge variable
    int gauss_points = 12;
    double rho_big = 1e6;    // truncation radius for unbounded data
    double support_radius =
        std::numeric_limits<double>::infinity(); // data support bound
};

// integral of K(x, .) over the exterior; equals 1 up to quadrature error
double kernel_mass(const BallKernel& k, const Point& x,
                   const BallQuadratureOptions& opt = {});

// u(x) = int K(x,y) F(y) dy.  F must satisfy the stable integrability
// condition; unbounded growth beyond |y|^(2s) is flagged as a contract
// violation via a far-ring growth test.
double solve_ball_quadrature(const BallKernel& k,
                             const std::function<double(const Point&)>& F,
                             const Point& x,
                             const BallQuadratureOptions& opt = {});

struct KernelBoundCheck {
    double ratio_min;
    double ratio_max;
};

// Samples M pairs (x interior, y exterior with heavy-tail radius) and
// returns the extremes of K(x,y) d(y)^s (d(y)+1)^s |x-y|^n / d(x)^s.
KernelBoundCheck check_kernel_bounds(const BallKernel& k, std::size_t samples,
                                     std::uint64_t seed);

} // namespace fraclap

#endif
