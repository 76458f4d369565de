#ifndef FRACLAP_LP_HPP
#define FRACLAP_LP_HPP

#include "fraclap/fft.hpp"
#include "fraclap/grid.hpp"

#include <vector>

namespace fraclap {

// Weight used in the homogeneous norms: |xi|^(2a) or (2*pi*|xi|)^(2a).
// Multiplier compositions are exactly norm-preserving in the two_pi variant.
enum class FreqWeight { plain, two_pi };

// Dyadic partition of unity on the frequency lattice.  Band i samples
// eta_hat(2^-i xi): positive on 2^(i-1) < |xi| < 2^(i+1), zero elsewhere,
// and the bands sum to 1 at every nonzero lattice frequency.
class LPFilterBank {
  public:
    explicit LPFilterBank(const SolverParams& params);

    const SolverParams& params() const { return params_; }
    int i_min() const { return i_min_; }
    int i_max() const { return i_max_; }
    // sampled multiplier of band i over the flat frequency lattice
    const std::vector<double>& band(int i) const;
    // profile value eta_hat(2^-i xi) at |xi| = r (used by tests)
    static double eta_hat(int i, double r);

  private:
    SolverParams params_;
    int i_min_;
    int i_max_;
    std::vector<std::vector<double>> bands_;
};

LPFilterBank build_filter_bank(const SolverParams& params);

// Littlewood-Paley form of the homogeneous Sobolev norm, valid for either
// sign of alpha (|alpha| < n/2 + 2).
double hs_norm_lp(const GridFunction& f, double alpha, const LPFilterBank& bank,
                  FreqWeight w = FreqWeight::plain);

// Direct frequency-sum form, alpha >= 0 only.
double hs_norm_direct(const GridFunction& f, double alpha,
                      FreqWeight w = FreqWeight::plain);

// Second-difference double integral over the torus cell, alpha in (0,2).
// The |y|_inf > L/2 far tail is added analytically assuming f is supported
// in the central half of the box (there the second difference is -2 f(x)).
double gagliardo_seminorm(const GridFunction& f, double alpha);

// LP-decomposed frequency pairing; agrees with the plain L^2 inner product
// up to the excluded zero mode.
double dual_pairing(const GridFunction& phi, const GridFunction& f,
                    const LPFilterBank& bank);

// Integral of |y|^(-(n+2a)) over {|y|_inf > A} (used for the Gagliardo tail).
double inf_norm_tail_integral(int n, double a, double A);

} // namespace fraclap

#endif
