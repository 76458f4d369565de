#ifndef FRACLAP_PARAMS_HPP
#define FRACLAP_PARAMS_HPP

#include <cstdint>
#include <cstddef>

namespace fraclap {

// Validated solver parameters: dimension n in {2,3}, fractional order
// 0 < s < 1, grid points per axis N (power of two >= 16), torus period L.
// Construct through make_params(); every downstream module assumes validity.
class SolverParams {
  public:
    int n() const { return n_; }
    double s() const { return s_; }
    std::uint32_t grid_size() const { return N_; }
    double box_length() const { return L_; }

    double spacing() const { return L_ / static_cast<double>(N_); }
    std::size_t node_count() const {
        std::size_t c = 1;
        for (int d = 0; d < n_; ++d) c *= N_;
        return c;
    }
    bool same_grid(const SolverParams& o) const {
        return n_ == o.n_ && N_ == o.N_ && L_ == o.L_;
    }

    friend SolverParams make_params(int n, double s, std::uint32_t grid_size,
                                    double box_length);

  private:
    SolverParams(int n, double s, std::uint32_t N, double L)
        : n_(n), s_(s), N_(N), L_(L) {}
    int n_;
    double s_;
    std::uint32_t N_;
    double L_;
};

// Throws ConfigError outside the documented ranges.
SolverParams make_params(int n, double s, std::uint32_t grid_size,
                         double box_length);

// Normalization constant of the second-difference form of the fractional
// Laplacian, chosen so that the singular integral matches the multiplier
// (2*pi*|xi|)^(2s).  Equals 4^s Gamma(n/2+s) / (2 pi^(n/2) |Gamma(-s)|);
// the factor 1/2 converts the principal-value constant to the
// second-difference form.
double c_delta(int n, double s);

// Riesz kernel constant: Gamma_sigma(x) = c_riesz(n,sigma) |x|^(sigma-n)
// has Fourier multiplier (2*pi*|xi|)^(-sigma).
double c_riesz(int n, double sigma);

} // namespace fraclap

#endif
