#ifndef FRACLAP_FRAC_OPS_HPP
#define FRACLAP_FRAC_OPS_HPP

#include "fraclap/fft.hpp"
#include "fraclap/grid.hpp"

#include <vector>

namespace fraclap {

// Per-frequency symbols.  The fractional Laplacian used throughout has the
// positive symbol (2*pi*|xi|)^(2s); the second-difference integral form
// carries the matching sign (the raw integral times -1 with c_delta > 0).
std::vector<double> frac_laplacian_symbol(const SolverParams& params, double s);
std::vector<double> riesz_symbol(const SolverParams& params, double sigma);

// Multiplier form of Delta^s.  Output has zero mean.
GridFunction delta_s_fourier(const GridFunction& f, double s);

// Riesz potential I_sigma as a multiplier, sigma in (0, n).  Requires
// zero-mean input (|mean| <= 1e-10 * rms); the zero mode stays zero.
GridFunction riesz_fourier(const GridFunction& f, double sigma);

// Quadrature tables for the real-space forms.  Weights are correlation
// coefficients on the displacement lattice; building them costs O(N^n * M^n)
// once per (n, N, L, order), so they are cached behind the convenience
// wrappers below.
struct KernelQuadratureScheme {
    int image_shells;   // periodization image radius (in box lengths)
    int pi_radius;      // product-integration radius (in cells)
    int block_radius;   // quadratic-subtraction block radius (in cells)
};
KernelQuadratureScheme default_singular_scheme(int n);
KernelQuadratureScheme default_riesz_scheme(int n);

struct SecondDifferenceTable {
    std::vector<double> corr_weights; // coefficient of f(x+y), y != 0
    double weight_sum;                // sum of corr_weights
    Spectrum corr_weights_hat;        // cached DFT of corr_weights
};

struct RieszKernelTable {
    std::vector<double> conv_weights; // coefficient of f(x-y)
    Spectrum conv_weights_hat;
};

SecondDifferenceTable build_second_difference_table(
    const SolverParams& params, double s, const KernelQuadratureScheme& sch);
RieszKernelTable build_riesz_kernel_table(const SolverParams& params,
                                          double sigma,
                                          const KernelQuadratureScheme& sch);

GridFunction apply_second_difference(const GridFunction& f, double s,
                                     const SecondDifferenceTable& table);
GridFunction apply_riesz_kernel(const GridFunction& f, double sigma,
                                const RieszKernelTable& table);

// Singular-integral form of Delta^s: periodized-kernel quadrature of the
// second-difference integral with product-integration weights near the
// singularity and an exact quadratic (Taylor) correction on the central
// block.  Tables are cached per (params, s).
GridFunction delta_s_singular(const GridFunction& f, double s);

// Kernel form of I_sigma: convolution quadrature against
// c_riesz(n,sigma) |y|^(sigma-n) with periodic image correction.
// Requires zero-mean input, sigma in (0, n).
GridFunction riesz_kernel(const GridFunction& f, double sigma);

} // namespace fraclap

#endif
