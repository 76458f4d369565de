#ifndef FRACLAP_GRID_HPP
#define FRACLAP_GRID_HPP

#include "fraclap/params.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace fraclap {

using Point = std::array<double, 3>; // [0..n) used; trailing entries zero

// Scalar field sampled on the uniform N^n lattice of the torus [0,L)^n.
// Geometry and data functions use centered coordinates: node index i maps to
// coordinate i*h - L/2 per axis, so the box center is the origin.
// Values are row-major with the last axis fastest.
class GridFunction {
  public:
    explicit GridFunction(const SolverParams& params);
    GridFunction(const SolverParams& params, std::vector<double> values);

    const SolverParams& params() const { return params_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t flat) const { return values_[flat]; }
    double& operator[](std::size_t flat) { return values_[flat]; }

    // centered coordinate of a flat index
    Point point(std::size_t flat) const;

    // fill from a callable taking a centered point
    void fill(const std::function<double(const Point&)>& f);

    double mean() const;
    double l2_norm() const;      // sqrt(h^n * sum f^2)
    double max_abs() const;
    bool all_finite() const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double a);

    // Binary grid file: magic "FLGF", u32 n, u32 N, f64 L, f64 s, then
    // N^n little-endian f64 values row-major.  Round-trips bit-exactly.
    void write(const std::string& path) const;
    static GridFunction read(const std::string& path);

  private:
    SolverParams params_;
    std::vector<double> values_;
};

} // namespace fraclap

#endif
