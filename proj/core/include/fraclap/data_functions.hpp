#ifndef FRACLAP_DATA_FUNCTIONS_HPP
#define FRACLAP_DATA_FUNCTIONS_HPP

#include "fraclap/grid.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace fraclap {

// Evaluable scalar field used for exterior data F and for test functions.
// support_radius bounds the support around the origin (infinity when the
// field does not vanish at large distance, e.g. constants).
struct DataField {
    std::function<double(const Point&)> eval;
    double support_radius = std::numeric_limits<double>::infinity();

    double operator()(const Point& x) const { return eval(x); }
};

DataField make_constant(double value);
// smooth radial shell bump: positive on r_inner < |y - c| < r_outer
DataField make_radial_bump(const Point& center, double r_inner, double r_outer,
                           double amplitude);
// compact C-infinity ball bump exp(-1/(1 - r^2/R^2))
DataField make_ball_bump(const Point& center, double radius, double amplitude);
DataField make_gaussian(const Point& center, double width, double amplitude);
// indicator of the halfspace {x . normal >= offset}
DataField make_halfspace(const Point& normal, double offset, double amplitude);
DataField make_sum(std::vector<DataField> terms);

// Smooth box-compatible test family for the operator consistency checks:
// compactly supported (or numerically vanishing) inside the central half of
// the box so the periodic surrogate applies cleanly.
struct NamedGridFunction {
    std::string name;
    GridFunction f;
};
std::vector<NamedGridFunction> make_test_family(const SolverParams& params);

// family of exterior data used by the stability sweep (>= 10 entries)
std::vector<DataField> make_stability_family(double r_domain);

} // namespace fraclap

#endif
