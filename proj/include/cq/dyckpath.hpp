#pragma once

#include "cq/gammamod.hpp"

#include <string>
#include <vector>

namespace cq {

struct Point {
    long x = 0, y = 0;
    auto operator<=>(const Point&) const = default;
};

// Lattice path in the n-wide, d-tall grid from (0,0) to (n,d), weakly above
// the diagonal. Square (x,y) carries the label n*y - d*(x+1).
class DyckPath {
public:
    DyckPath(const GermParams& p, std::string steps);
    // heights[x] = y-coordinate of the E-step leaving column x
    static DyckPath from_heights(const GermParams& p, const std::vector<long>& heights);

    const GermParams& params() const { return params_; }
    const std::string& steps() const { return steps_; }
    const std::vector<long>& heights() const { return heights_; }
    std::vector<Point> points() const;
    long area() const;

    bool operator==(const DyckPath& o) const { return params_ == o.params_ && steps_ == o.steps_; }

private:
    GermParams params_;
    std::string steps_;
    std::vector<long> heights_;
};

long grid_label(const GermParams& p, long x, long y);
// distance-like quantity n*y - d*x (positive above the diagonal)
long diagonal_height(const GermParams& p, const Point& v);

std::vector<DyckPath> all_dyck_paths(const GermParams& p);

DyckPath to_dyck(const GammaModule& m);
GammaModule from_dyck(const DyckPath& path);

struct VertexSets {
    std::vector<Point> inner;  // E step followed by N step
    std::vector<Point> outer;  // N step followed by E step
};
VertexSets vertex_sets(const DyckPath& path);
// Label of the square attached to a vertex: the generator (inner) or the module element (outer).
long inner_label(const DyckPath& path, const Point& v);
long outer_label(const DyckPath& path, const Point& v);

long kappa(const DyckPath& path, const Point& v);

// codinv via the bijection
long codinv(const DyckPath& path);

GammaModule rowmotion(const GammaModule& m);

std::string to_svg(const DyckPath& path);
nlohmann::json to_json(const VertexSets& v);

}  // namespace cq
