#include "cq/dyckpath.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cq {

namespace {

long mod(long x, long n) { return ((x % n) + n) % n; }

}  // namespace

DyckPath::DyckPath(const GermParams& p, std::string steps) : params_(p), steps_(std::move(steps))
{
    p.require_coprime("Dyck paths");
    long x = 0, y = 0;
    for (char c : steps_) {
        if (c == 'N') {
            ++y;
        } else if (c == 'E') {
            if (p.n * y < p.d * (x + 1))
                throw std::invalid_argument("path dips below the diagonal: " + steps_);
            heights_.push_back(y);
            ++x;
        } else {
            throw std::invalid_argument("path steps must be N or E");
        }
    }
    if (x != p.n || y != p.d)
        throw std::invalid_argument("path must end at (n,d): " + steps_);
}

DyckPath DyckPath::from_heights(const GermParams& p, const std::vector<long>& heights)
{
    std::string s;
    long y = 0;
    for (long h : heights) {
        if (h < y)
            throw std::invalid_argument("heights must be nondecreasing");
        s.append(h - y, 'N');
        s.push_back('E');
        y = h;
    }
    return DyckPath(p, s);
}

std::vector<Point> DyckPath::points() const
{
    std::vector<Point> pts{{0, 0}};
    for (char c : steps_) {
        Point q = pts.back();
        (c == 'N' ? q.y : q.x) += 1;
        pts.push_back(q);
    }
    return pts;
}

long DyckPath::area() const
{
    // squares with nonnegative label under the path
    long a = 0;
    for (long x = 0; x < params_.n; ++x)
        for (long y = 0; y < heights_[x]; ++y)
            a += grid_label(params_, x, y) >= 0;
    return a;
}

long grid_label(const GermParams& p, long x, long y) { return p.n * y - p.d * (x + 1); }

long diagonal_height(const GermParams& p, const Point& v) { return p.n * v.y - p.d * v.x; }

std::vector<DyckPath> all_dyck_paths(const GermParams& p)
{
    p.require_coprime("Dyck paths");
    std::vector<DyckPath> out;
    std::vector<long> h(p.n);
    auto rec = [&](auto&& self, long x, long lo) -> void {
        if (x == p.n) {
            out.push_back(DyckPath::from_heights(p, h));
            return;
        }
        long need = (p.d * (x + 1) + p.n - 1) / p.n;  // ceil(d(x+1)/n)
        for (long y = std::max(lo, need); y <= p.d; ++y) {
            if (x == p.n - 1 && y != p.d)
                continue;
            h[x] = y;
            self(self, x + 1, y);
        }
    };
    rec(rec, 0, 0);
    return out;
}

DyckPath to_dyck(const GammaModule& m)
{
    const GermParams& p = m.params();
    p.require_coprime("to_dyck");
    if (m.ambient().kind != Ambient::S || m.min() != 0)
        throw std::invalid_argument("to_dyck needs a module of Z>=0 with minimum 0, got " + m.label());
    std::vector<long> h(p.n);
    for (long x = 0; x < p.n; ++x) {
        long g = m.genvec()[mod(-p.d * (x + 1), p.n)];
        h[x] = (g + p.d * (x + 1)) / p.n;
    }
    return DyckPath::from_heights(p, h);
}

GammaModule from_dyck(const DyckPath& path)
{
    const GermParams& p = path.params();
    std::vector<long> g(p.n);
    for (long x = 0; x < p.n; ++x)
        g[mod(-p.d * (x + 1), p.n)] = grid_label(p, x, path.heights()[x]);
    return GammaModule(p, Ambient::S, g);
}

VertexSets vertex_sets(const DyckPath& path)
{
    VertexSets v;
    auto pts = path.points();
    const std::string& s = path.steps();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] == 'E' && s[i + 1] == 'N')
            v.inner.push_back(pts[i + 1]);
        if (s[i] == 'N' && s[i + 1] == 'E')
            v.outer.push_back(pts[i + 1]);
    }
    return v;
}

long inner_label(const DyckPath& path, const Point& v) { return grid_label(path.params(), v.x - 1, v.y); }

long outer_label(const DyckPath& path, const Point& v) { return grid_label(path.params(), v.x, v.y); }

long kappa(const DyckPath& path, const Point& v)
{
    const long n = path.params().n, d = path.params().d;
    long count = 0;
    for (long x = 0; x < n; ++x) {
        // E-step at height h from x to x+1 crosses y - v.y = (d/n)(X - v.x) strictly inside
        long lhs = n * (path.heights()[x] - v.y);
        if (d * (x - v.x) < lhs && lhs < d * (x + 1 - v.x))
            ++count;
    }
    return count;
}

long codinv(const DyckPath& path) { return cell_dim(from_dyck(path)); }

GammaModule rowmotion(const GammaModule& m)
{
    const GermParams& p = m.params();
    if (m.ambient().kind != Ambient::S || m.min() != 0)
        throw std::invalid_argument("rowmotion acts on modules with minimum 0");
    auto target = generators(m);
    target.erase(std::remove(target.begin(), target.end(), 0L), target.end());
    std::vector<GammaModule> hits;
    for (auto& c : fundamental_domain(p))
        if (cogenerators(c) == target)
            hits.push_back(c);
    if (hits.size() != 1)
        throw std::logic_error("rowmotion of " + m.label() + " has " + std::to_string(hits.size()) +
                               " candidates");
    return hits.front();
}

std::string to_svg(const DyckPath& path)
{
    const long n = path.params().n, d = path.params().d, s = 40;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (n + 1) * s << "\" height=\"" << (d + 1) * s
        << "\">\n";
    auto X = [&](long x) { return s / 2 + x * s; };
    auto Y = [&](long y) { return s / 2 + (d - y) * s; };
    for (long x = 0; x < n; ++x)
        for (long y = 0; y < d; ++y) {
            long lab = grid_label(path.params(), x, y);
            bool under = y < path.heights()[x];
            out << "<rect x=\"" << X(x) << "\" y=\"" << Y(y + 1) << "\" width=\"" << s << "\" height=\"" << s
                << "\" fill=\"" << (under && lab >= 0 ? "#dde" : "white") << "\" stroke=\"#999\"/>"
                << "<text x=\"" << X(x) + s / 2 << "\" y=\"" << Y(y) - s / 3
                << "\" font-size=\"12\" text-anchor=\"middle\">" << lab << "</text>\n";
        }
    out << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(n) << "\" y2=\"" << Y(d)
        << "\" stroke=\"#c33\" stroke-dasharray=\"4\"/>\n<polyline fill=\"none\" stroke=\"black\" stroke-width=\"3\" points=\"";
    for (auto& pt : path.points())
        out << X(pt.x) << ',' << Y(pt.y) << ' ';
    out << "\"/>\n</svg>\n";
    return out.str();
}

nlohmann::json to_json(const VertexSets& v)
{
    auto pts = [](const std::vector<Point>& ps) {
        nlohmann::json a = nlohmann::json::array();
        for (auto& p : ps)
            a.push_back({p.x, p.y});
        return a;
    };
    return {{"inner", pts(v.inner)}, {"outer", pts(v.outer)}};
}

}  // namespace cq
