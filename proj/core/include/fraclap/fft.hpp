#ifndef FRACLAP_FFT_HPP
#define FRACLAP_FFT_HPP

#include "fraclap/grid.hpp"
#include "fraclap/params.hpp"

#include <complex>
#include <vector>

namespace fraclap {

using Spectrum = std::vector<std::complex<double>>;

// Unnormalized DFT of the grid values (FFTW forward convention).
// The discrete surrogate of the continuous transform over the box is
// h^n * dft(f); norms and pairings apply that factor where needed.
Spectrum dft(const GridFunction& f);

// Inverse: idft(dft(f)) == f.  Divides by N^n.
GridFunction idft(const Spectrum& fh, const SolverParams& params);

// |xi|^2 at each lattice frequency, xi = k/L with signed integer k per axis.
std::vector<double> frequency_sq(const SolverParams& params);

// Applies a real per-frequency symbol to f (multiplier operator).
GridFunction apply_multiplier(const GridFunction& f,
                              const std::vector<double>& symbol);

// Deterministic parallel map over [0, count): results must not depend on the
// partition, so the body must write only to its own index range.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  int threads = 0);

// Thread count used by parallel_for when threads <= 0 (defaults to hardware).
void set_default_threads(int t);
int default_threads();

} // namespace fraclap

#endif
