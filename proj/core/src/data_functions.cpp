#include "fraclap/data_functions.hpp"

#include <cmath>

namespace fraclap {

namespace {

double bump01(double t2) {
    // exp(-1/(1-t^2)) on t^2 < 1, 0 outside
    return t2 < 1.0 ? std::exp(-1.0 / (1.0 - t2)) : 0.0;
}

double dist(const Point& a, const Point& b) {
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) +
                     (a[1] - b[1]) * (a[1] - b[1]) +
                     (a[2] - b[2]) * (a[2] - b[2]));
}

double norm_of(const Point& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

} // namespace

DataField make_constant(double value) {
    return DataField{[value](const Point&) { return value; },
                     std::numeric_limits<double>::infinity()};
}

DataField make_radial_bump(const Point& center, double r_inner,
                           double r_outer, double amplitude) {
    const double mid = 0.5 * (r_inner + r_outer);
    const double half = 0.5 * (r_outer - r_inner);
    DataField f;
    f.eval = [=](const Point& y) {
        const double t = (dist(y, center) - mid) / half;
        return amplitude * bump01(t * t);
    };
    f.support_radius = norm_of(center) + r_outer;
    return f;
}

DataField make_ball_bump(const Point& center, double radius,
                         double amplitude) {
    DataField f;
    f.eval = [=](const Point& y) {
        const double t = dist(y, center) / radius;
        return amplitude * bump01(t * t);
    };
    f.support_radius = norm_of(center) + radius;
    return f;
}

DataField make_gaussian(const Point& center, double width, double amplitude) {
    DataField f;
    f.eval = [=](const Point& y) {
        const double r = dist(y, center);
        return amplitude * std::exp(-0.5 * r * r / (width * width));
    };
    // effectively supported within 9 widths (below 2^-58 outside)
    f.support_radius = norm_of(center) + 9.0 * width;
    return f;
}

DataField make_halfspace(const Point& normal, double offset,
                         double amplitude) {
    const double nn = norm_of(normal);
    Point unit{normal[0] / nn, normal[1] / nn, normal[2] / nn};
    DataField f;
    f.eval = [=](const Point& y) {
        const double d = y[0] * unit[0] + y[1] * unit[1] + y[2] * unit[2];
        return d >= offset ? amplitude : 0.0;
    };
    return f;
}

DataField make_sum(std::vector<DataField> terms) {
    DataField f;
    double sup = 0.0;
    for (const auto& t : terms) sup = std::max(sup, t.support_radius);
    f.support_radius = sup;
    f.eval = [terms = std::move(terms)](const Point& y) {
        double acc = 0.0;
        for (const auto& t : terms) acc += t.eval(y);
        return acc;
    };
    return f;
}

std::vector<NamedGridFunction> make_test_family(const SolverParams& params) {
    const double L = params.box_length();
    const double u = L / 8.0; // family scales with the box
    std::vector<NamedGridFunction> out;
    auto add = [&](const std::string& name, const DataField& d) {
        GridFunction g(params);
        g.fill([&](const Point& x) { return d(x); });
        out.push_back({name, std::move(g)});
    };
    add("gauss_center", make_gaussian({0, 0, 0}, 0.7 * u, 1.0));
    add("gauss_offset", make_gaussian({0.7 * u, -0.4 * u, 0.2 * u},
                                      0.55 * u, 1.0));
    add("gauss_pair",
        make_sum({make_gaussian({-0.8 * u, 0, 0}, 0.55 * u, 1.0),
                  make_gaussian({0.8 * u, 0.3 * u, -0.3 * u}, 0.55 * u,
                                -1.0)}));
    add("wide_bump", make_ball_bump({0, 0, 0}, 2.0 * u, 1.0));
    {
        // modulated gaussian: nontrivial mid-band spectral content
        DataField g = make_gaussian({0, 0, 0}, 0.9 * u, 1.0);
        DataField f;
        f.support_radius = g.support_radius;
        f.eval = [g, L](const Point& x) {
            return g(x) * std::cos(2.0 * M_PI * 3.0 * x[0] / L);
        };
        add("gauss_cos", f);
    }
    return out;
}

std::vector<DataField> make_stability_family(double r) {
    std::vector<DataField> fam;
    fam.push_back(make_radial_bump({0, 0, 0}, 1.2 * r, 1.8 * r, 1.0));
    fam.push_back(make_radial_bump({0, 0, 0}, 1.3 * r, 2.2 * r, 0.7));
    fam.push_back(make_radial_bump({0, 0, 0}, 1.1 * r, 1.5 * r, -1.2));
    fam.push_back(make_ball_bump({1.6 * r, 0, 0}, 0.35 * r, 1.0));
    fam.push_back(make_ball_bump({-1.5 * r, 0.6 * r, 0}, 0.4 * r, -0.8));
    fam.push_back(make_ball_bump({0, -1.7 * r, 0}, 0.5 * r, 1.5));
    fam.push_back(make_sum({make_ball_bump({1.4 * r, 0.5 * r, 0}, 0.3 * r,
                                           1.0),
                            make_ball_bump({-1.4 * r, -0.5 * r, 0}, 0.3 * r,
                                           1.0)}));
    fam.push_back(make_sum({make_radial_bump({0, 0, 0}, 1.2 * r, 1.6 * r,
                                             0.5),
                            make_ball_bump({0, 1.9 * r, 0}, 0.4 * r, -0.6)}));
    fam.push_back(make_ball_bump({1.2 * r, -1.2 * r, 0}, 0.45 * r, 0.9));
    fam.push_back(make_radial_bump({0.2 * r, 0.1 * r, 0}, 1.4 * r, 2.0 * r,
                                   1.1));
    return fam;
}

} // namespace fraclap
