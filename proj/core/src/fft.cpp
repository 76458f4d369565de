#include "fraclap/fft.hpp"

#include <fftw3.h>

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace fraclap {

namespace {

std::mutex g_plan_mutex;

// FFTW planner is not thread-safe; plans are cached per (rank, N, sign) and
// executed via fftw_execute_dft on caller-owned arrays (FFTW_UNALIGNED).
fftw_plan plan_for(int rank, std::uint32_t N, int sign) {
    static std::map<std::tuple<int, std::uint32_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_tuple(rank, N, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::size_t count = 1;
    for (int d = 0; d < rank; ++d) count *= N;
    std::vector<std::complex<double>> tmp_in(count), tmp_out(count);
    int dims[3] = {static_cast<int>(N), static_cast<int>(N),
                   static_cast<int>(N)};
    fftw_plan p = fftw_plan_dft(
        rank, dims, reinterpret_cast<fftw_complex*>(tmp_in.data()),
        reinterpret_cast<fftw_complex*>(tmp_out.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

void exec(int rank, std::uint32_t N, int sign, const Spectrum& in,
          Spectrum& out) {
    fftw_plan p = plan_for(rank, N, sign);
    fftw_execute_dft(
        p,
        reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(
            in.data())),
        reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

Spectrum dft(const GridFunction& f) {
    Spectrum in(f.size()), out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) in[i] = f[i];
    exec(f.params().n(), f.params().grid_size(), FFTW_FORWARD, in, out);
    return out;
}

GridFunction idft(const Spectrum& fh, const SolverParams& params) {
    Spectrum out(fh.size());
    exec(params.n(), params.grid_size(), FFTW_BACKWARD, fh, out);
    GridFunction g(params);
    const double scale = 1.0 / static_cast<double>(fh.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        g[i] = out[i].real() * scale;
    return g;
}

std::vector<double> frequency_sq(const SolverParams& params) {
    const std::uint32_t N = params.grid_size();
    const double invL = 1.0 / params.box_length();
    std::vector<double> axis(N);
    for (std::uint32_t i = 0; i < N; ++i) {
        const double k = (i < N / 2) ? static_cast<double>(i)
                                     : static_cast<double>(i) - N;
        axis[i] = k * invL * k * invL;
    }
    std::vector<double> out(params.node_count());
    if (params.n() == 2) {
        std::size_t idx = 0;
        for (std::uint32_t i = 0; i < N; ++i)
            for (std::uint32_t j = 0; j < N; ++j)
                out[idx++] = axis[i] + axis[j];
    } else {
        std::size_t idx = 0;
        for (std::uint32_t i = 0; i < N; ++i)
            for (std::uint32_t j = 0; j < N; ++j)
                for (std::uint32_t k = 0; k < N; ++k)
                    out[idx++] = axis[i] + axis[j] + axis[k];
    }
    return out;
}

GridFunction apply_multiplier(const GridFunction& f,
                              const std::vector<double>& symbol) {
    Spectrum fh = dft(f);
    for (std::size_t i = 0; i < fh.size(); ++i) fh[i] *= symbol[i];
    return idft(fh, f.params());
}

namespace {
std::atomic<int> g_threads{0};
}

void set_default_threads(int t) { g_threads.store(t); }

int default_threads() {
    int t = g_threads.load();
    if (t > 0) return t;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  int threads) {
    int t = threads > 0 ? threads : default_threads();
    if (t <= 1 || count < 2) {
        body(0, count);
        return;
    }
    std::size_t nt = std::min<std::size_t>(t, count);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (count + nt - 1) / nt;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (std::size_t w = 0; w < nt; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace fraclap
