#ifndef FRACLAP_GEOMETRY_HPP
#define FRACLAP_GEOMETRY_HPP

#include "fraclap/grid.hpp"

#include <variant>
#include <vector>

namespace fraclap {

// Shapes live in centered box coordinates (origin at the box center).

struct Ball {
    Point center{0.0, 0.0, 0.0};
    double radius = 1.0;
};

struct AxisBox {
    Point lo{0.0, 0.0, 0.0};
    Point hi{0.0, 0.0, 0.0};
};

// simple polygon, positively oriented, n = 2 only
struct Polygon {
    std::vector<std::array<double, 2>> vertices;
};

class Domain {
  public:
    Domain(int n, Ball b);
    Domain(int n, AxisBox b);
    explicit Domain(Polygon p); // n = 2

    int n() const { return n_; }
    bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
    const Ball& ball() const { return std::get<Ball>(shape_); }
    const std::variant<Ball, AxisBox, Polygon>& shape() const {
        return shape_;
    }

    // true iff x lies in the open interior; boundary points report false
    bool contains(const Point& x) const;

    // Euclidean distance to the boundary, valid inside and outside
    double boundary_distance(const Point& x) const;

    // a bounding radius about the origin (used for validation)
    double bounding_radius() const;

  private:
    int n_;
    std::variant<Ball, AxisBox, Polygon> shape_;
};

// Inward-offset family Omega_k = {x in Omega : dist(x, boundary) > r_k},
// offsets strictly decreasing.
struct AnnulusFamily {
    Domain domain;
    std::vector<double> offsets; // r_1 > r_2 > ... > r_K > 0

    AnnulusFamily(Domain d, std::vector<double> r);
    // membership in Omega_k (0-based k)
    bool in_shrunken(std::size_t k, const Point& x) const;
};

// Lattice nodes with spacing h inside B(0, R_trunc) \ closure(Omega), each
// farther than h/2 from the boundary.  The lattice is anchored at the origin
// so that nodes align with the grid when h is a multiple of the grid spacing.
std::vector<Point> exterior_annulus_nodes(const Domain& d, double R_trunc,
                                          double h);

} // namespace fraclap

#endif
