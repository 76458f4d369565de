#include "fraclap/grid.hpp"
#include "fraclap/error.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace fraclap {

GridFunction::GridFunction(const SolverParams& params)
    : params_(params), values_(params.node_count(), 0.0) {}

GridFunction::GridFunction(const SolverParams& params,
                           std::vector<double> values)
    : params_(params), values_(std::move(values)) {
    if (values_.size() != params_.node_count())
        throw ConfigError("GridFunction value count does not match N^n");
}

Point GridFunction::point(std::size_t flat) const {
    const std::uint32_t N = params_.grid_size();
    const double h = params_.spacing();
    const double half = 0.5 * params_.box_length();
    Point p{0.0, 0.0, 0.0};
    if (params_.n() == 2) {
        p[0] = static_cast<double>(flat / N) * h - half;
        p[1] = static_cast<double>(flat % N) * h - half;
    } else {
        p[2] = static_cast<double>(flat % N) * h - half;
        flat /= N;
        p[1] = static_cast<double>(flat % N) * h - half;
        p[0] = static_cast<double>(flat / N) * h - half;
    }
    return p;
}

void GridFunction::fill(const std::function<double(const Point&)>& f) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = f(point(i));
}

double GridFunction::mean() const {
    double acc = 0.0;
    for (double v : values_) acc += v;
    return acc / static_cast<double>(values_.size());
}

double GridFunction::l2_norm() const {
    double acc = 0.0;
    for (double v : values_) acc += v * v;
    const double hn = std::pow(params_.spacing(), params_.n());
    return std::sqrt(hn * acc);
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridFunction::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    if (!params_.same_grid(o.params_)) throw ConfigError("grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    if (!params_.same_grid(o.params_)) throw ConfigError("grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

namespace {
constexpr char kMagic[4] = {'F', 'L', 'G', 'F'};

template <class T> void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T> T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}
} // namespace

void GridFunction::write(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write(kMagic, 4);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(params_.n()));
    put<std::uint32_t>(os, params_.grid_size());
    put<double>(os, params_.box_length());
    put<double>(os, params_.s());
    os.write(reinterpret_cast<const char*>(values_.data()),
             static_cast<std::streamsize>(values_.size() * sizeof(double)));
    if (!os) throw IoError("write failed: " + path);
}

GridFunction GridFunction::read(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open for reading: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("bad grid file magic: " + path);
    const auto n = get<std::uint32_t>(is);
    const auto N = get<std::uint32_t>(is);
    const double L = get<double>(is);
    const double s = get<double>(is);
    if (!is) throw IoError("truncated grid header: " + path);
    SolverParams p = make_params(static_cast<int>(n), s, N, L);
    std::vector<double> vals(p.node_count());
    is.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!is) throw IoError("truncated grid data: " + path);
    return GridFunction(p, std::move(vals));
}

} // namespace fraclap
