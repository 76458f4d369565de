#ifndef FRACLAP_INTERP_HPP
#define FRACLAP_INTERP_HPP

#include <cstddef>
#include <vector>

namespace fraclap {

// Fritsch-Carlson monotone cubic interpolant.  Strictly increasing x;
// preserves monotonicity of the data, which keeps tabulated inverse CDFs
// valid sampling maps.
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double xq) const;
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, m_; // nodes, values, endpoint slopes
};

} // namespace fraclap

#endif
