#include "cyleig/geometry.hpp"

#include <cmath>

#include "cyleig/errors.hpp"
#include "cyleig/tolerances.hpp"

namespace cyleig {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double sector_angle(int j, int genus) { return (2 * j - 1) * kPi / (4 * genus); }

MobiusTransform conj_conjugate(const MobiusTransform& t) {
    // z -> conj(T(conj z))
    return MobiusTransform(std::conj(t.a()), std::conj(t.b()));
}

}  // namespace

OrthoDisk inscribed_disk(int j, int genus, double alpha) {
    if (genus < 1) throw DomainError("inscribed_disk: genus must be >= 1");
    if (j < 1 || j > 4 * genus) throw DomainError("inscribed_disk: j out of range");
    if (!(alpha > 0.0 && alpha < kPi / (4 * genus)))
        throw DomainError("inscribed_disk: alpha out of (0, pi/(4 genus))");
    const double theta = sector_angle(j, genus);
    return OrthoDisk(std::polar(1.0 / std::cos(alpha), theta), std::tan(alpha));
}

OrthoDisk core_boundary_disk_between(const OrthoDisk& dj, const OrthoDisk& djp1) {
    // Orthogonality to the unit circle and to a disk with center c_k reduces
    // to |c'| |c_k| cos(arg c' - arg c_k) = 1; solve the two conditions for
    // the center argument psi.
    const double t1 = std::arg(dj.center), t2o = std::arg(djp1.center);
    const double m1 = std::abs(dj.center), m2 = std::abs(djp1.center);
    double t2 = t2o;
    while (t2 < t1) t2 += 2 * kPi;
    const double num = m1 * std::cos(t1) - m2 * std::cos(t2);
    const double den = m2 * std::sin(t2) - m1 * std::sin(t1);
    double psi = std::atan2(num, den);
    // select the branch between the two sector angles
    while (psi < t1) psi += kPi;
    if (psi > t2) throw GeometryError("core_boundary_disk: no orthogonal disk between neighbors");
    const double mod = 1.0 / (m1 * std::cos(psi - t1));
    if (mod <= 1.0) throw GeometryError("core_boundary_disk: disk degenerates (|center| <= 1)");
    OrthoDisk out(std::polar(mod, psi), std::sqrt(mod * mod - 1.0));
    for (const auto* nb : {&dj, &djp1}) {
        const double res = std::abs(std::norm(out.center - nb->center) -
                                    out.radius * out.radius - nb->radius * nb->radius);
        if (res > 1e-9) throw GeometryError("core_boundary_disk: orthogonality residual too large");
    }
    return out;
}

OrthoDisk core_boundary_disk(int j, int genus, double alpha) {
    if (j < 1 || j > 4 * genus) throw DomainError("core_boundary_disk: j out of range");
    const OrthoDisk dj = inscribed_disk(j, genus, alpha);
    const OrthoDisk djp1 = inscribed_disk(j % (4 * genus) + 1, genus, alpha);
    OrthoDisk out = core_boundary_disk_between(dj, djp1);
    // symmetric geometry: center argument j pi/(2 genus), modulus cos a / cos(pi/4g)
    const double want = std::cos(alpha) / std::cos(kPi / (4 * genus));
    if (std::abs(std::abs(out.center) - want) > 1e-9)
        throw GeometryError("core_boundary_disk: symmetric closed form violated");
    return out;
}

MobiusTransform generator(int j, int genus, double alpha) {
    if (j < 1 || j > 2 * genus) throw DomainError("generator: j out of range");
    const OrthoDisk dj = inscribed_disk(j, genus, alpha);
    const double tau = -std::tanh(dist_origin_to_geodesic(dj));
    const MobiusTransform rot = MobiusTransform::rotation(sector_angle(j, genus));
    return rot * MobiusTransform::axis_translation(tau) * rot.inverse();
}

MobiusTransform translation_between(const OrthoDisk& from, const OrthoDisk& to) {
    const double theta = std::arg(from.center);
    // The common perpendicular of the two geodesics must be the diameter
    // through both centers; require the centers to be anti-aligned.
    const double opposite = std::remainder(std::arg(to.center) - theta - kPi, 2 * kPi);
    if (std::abs(opposite) > 1e-12)
        throw GeometryError("translation_between: disk centers are not anti-aligned");
    const double rho = dist_between_geodesics(from, to);
    const MobiusTransform rot = MobiusTransform::rotation(theta);
    const MobiusTransform s =
        rot * MobiusTransform::axis_translation(-std::tanh(rho / 2)) * rot.inverse();
    // validate the defining property on sampled boundary points
    for (int i = 0; i <= 8; ++i) {
        const Complex z = from.center + from.radius * std::polar(1.0, 2 * kPi * i / 9.0);
        if (std::abs(z) >= 1.0) continue;
        const Complex w = s(z);
        if (std::abs(std::abs(w - to.center) - to.radius) > 1e-8)
            throw GeometryError("translation_between: image does not lie on the target circle");
    }
    return s;
}

double boundary_length(int genus, double alpha) {
    if (!(alpha > 0.0 && alpha < kPi / (4 * genus)))
        throw DomainError("boundary_length: alpha out of range");
    const OrthoDisk d1 = inscribed_disk(1, genus, alpha);
    const OrthoDisk d2 = inscribed_disk(2, genus, alpha);
    return 4.0 * genus * dist_between_geodesics(d1, d2);
}

double SurfaceGeometry::disk_alpha(int j) const {
    if (genus == 1 && (j == 2 || j == 3)) return alpha_prime;
    return alpha;
}

namespace {

SurfaceGeometry assemble_surface(int genus, double alpha, double alpha_prime) {
    SurfaceGeometry geo;
    geo.genus = genus;
    geo.alpha = alpha;
    geo.alpha_prime = alpha_prime;
    const int n = 4 * genus;
    for (int j = 1; j <= n; ++j) {
        const double a = (genus == 1 && (j == 2 || j == 3)) ? alpha_prime : alpha;
        geo.disks.push_back(inscribed_disk(j, genus, a));
    }
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            if (inversive_distance(geo.disks[i], geo.disks[k]) <= 1.0)
                throw GeometryError("surface: disks are not pairwise disjoint");
        }
    }
    for (int i = 0; i < n; ++i)
        geo.core_disks.push_back(core_boundary_disk_between(geo.disks[i], geo.disks[(i + 1) % n]));
    if (alpha_prime == alpha) {
        for (int j = 1; j <= 2 * genus; ++j) geo.generators.push_back(generator(j, genus, alpha));
    } else {
        // S_1 is the no-sliding translation along the diameter through the
        // centers of D_1 and D_3; S_2 = conj . S_1^{-1} . conj.
        const MobiusTransform s1 = translation_between(geo.disks[0], geo.disks[2]);
        geo.generators.push_back(s1);
        geo.generators.push_back(conj_conjugate(s1.inverse()));
    }
    geo.ell = 0.0;
    for (int i = 0; i < n; ++i)
        geo.ell += dist_between_geodesics(geo.disks[i], geo.disks[(i + 1) % n]);
    return geo;
}

}  // namespace

SurfaceGeometry make_surface(int genus, double alpha) {
    return assemble_surface(genus, alpha, alpha);
}

SurfaceGeometry make_surface_broken(double alpha, double alpha_prime) {
    if (!(alpha_prime >= alpha && alpha_prime < kPi / 4))
        throw DomainError("make_surface_broken: need alpha <= alpha' < pi/4");
    return assemble_surface(1, alpha, alpha_prime);
}

bool in_fundamental_domain(Complex z, const SurfaceGeometry& geo) {
    if (std::abs(z) >= 1.0) return false;
    for (const auto& d : geo.disks)
        if (d.contains(z)) return false;
    return true;
}

bool in_core(Complex z, const SurfaceGeometry& geo) {
    if (!in_fundamental_domain(z, geo)) return false;
    for (const auto& d : geo.core_disks)
        if (d.contains(z)) return false;
    return true;
}

double ball_clearance(const SurfaceGeometry& geo) {
    double best = 1.0;
    for (const auto* list : {&geo.disks, &geo.core_disks})
        for (const auto& d : *list)
            best = std::min(best, std::abs(d.center) - d.radius - kBallRadius);
    return best;
}

BoundaryParametrization::BoundaryParametrization(const SurfaceGeometry& geo) {
    const int n = 4 * geo.genus;
    disks_ = geo.core_disks;
    // corner(i, k): intersection of core disk i with disk (i + k) mod n, k in {0, 1}
    auto corner = [&](int i, int k) {
        return circle_intersection_inside(geo.core_disks[i], geo.disks[(i + k) % n]);
    };
    int jp = n - 1;  // start on the core disk whose center argument is ~0 (mod 2pi)
    double y = 0.0, s = 0.0;
    int direction = +1;
    for (int step = 0; step < n; ++step) {
        const OrthoDisk& d = disks_[jp];
        const double sa = geodesic_coordinate(d, corner(jp, 0));
        const double sb = geodesic_coordinate(d, corner(jp, 1));
        // endpoint ahead of s in the current direction
        double send;
        int kend;
        if ((sa - s) * direction > tol::kPairing && (sb - s) * direction > tol::kPairing) {
            send = direction > 0 ? std::min(sa, sb) : std::max(sa, sb);
            kend = (send == sa) ? 0 : 1;
        } else if ((sa - s) * direction > tol::kPairing) {
            send = sa; kend = 0;
        } else if ((sb - s) * direction > tol::kPairing) {
            send = sb; kend = 1;
        } else {
            throw GeometryError("boundary parametrization: no endpoint ahead on arc");
        }
        arcs_.push_back({jp, y, y + std::abs(send - s), s, send});
        y += std::abs(send - s);
        // cross to the paired side
        const int jd = (jp + kend) % n;  // 0-based index of the D disk at this corner
        const Complex zc = corner(jp, kend);
        const int g2 = 2 * geo.genus;
        const Complex znew = (jd < g2) ? geo.generators[jd](zc)
                                       : geo.generators[jd - g2].inverse()(zc);
        if (step == n - 1) {
            // must close up at the anchor arc
            const double sclose = geodesic_coordinate(disks_[n - 1], znew);
            if (std::abs(std::abs(znew - disks_[n - 1].center) - disks_[n - 1].radius) > tol::kPairing)
                throw GeometryError("boundary parametrization: walk does not close up");
            arcs_.push_back({n - 1, y, y + std::abs(sclose), sclose, 0.0});
            y += std::abs(sclose);
            break;
        }
        // locate the arrival arc: znew is a corner of exactly one other core disk
        int found = -1, foundk = -1;
        for (int i = 0; i < n && found < 0; ++i)
            for (int k = 0; k < 2; ++k)
                if (std::abs(corner(i, k) - znew) < tol::kPairing) { found = i; foundk = k; break; }
        if (found < 0)
            throw GeometryError("boundary parametrization: arc stitching gap exceeds tolerance");
        jp = found;
        s = geodesic_coordinate(disks_[jp], znew);
        const double sother = geodesic_coordinate(disks_[jp], corner(jp, 1 - foundk));
        direction = (sother > s) ? +1 : -1;
    }
    total_length_ = y;

    // The walk produces valid lifts, but on the second half-loop they are not
    // the conjugates of the first-half lifts.  Rebuild that half by mirroring
    // so that point(-y) = conj(point(y)) holds exactly: keep the walked arcs
    // on [0, L/2] (splitting the arc containing L/2) and replace the rest by
    // the conjugate image of the first half, re-expressed on the conjugate
    // core disks.
    const double half = total_length_ / 2;
    std::vector<BoundaryArc> first;
    for (const auto& a : arcs_) {
        if (a.y_start >= half - tol::kPairing) break;
        BoundaryArc b = a;
        if (b.y_end > half) {
            const double sgn = (b.s_end >= b.s_start) ? 1.0 : -1.0;
            b.s_end = b.s_start + sgn * (half - b.y_start);
            b.y_end = half;
        }
        first.push_back(b);
        if (b.y_end >= half) break;
    }
    const BoundaryArc& mid = first.back();
    const Complex zhalf = geodesic_point(disks_[mid.core_disk], mid.s_end);
    if (std::abs(zhalf.imag()) > tol::kPairing)
        throw GeometryError("boundary parametrization: half-length point is off the real axis");
    auto conj_partner = [&](int j) {
        const Complex cc = std::conj(disks_[j].center);
        for (int k = 0; k < n; ++k)
            if (std::abs(disks_[k].center - cc) < tol::kPairing &&
                std::abs(disks_[k].radius - disks_[j].radius) < tol::kPairing)
                return k;
        throw GeometryError("boundary parametrization: core disks are not conjugation-symmetric");
    };
    arcs_ = first;
    for (auto it = first.rbegin(); it != first.rend(); ++it) {
        const int k = conj_partner(it->core_disk);
        const double ms = geodesic_coordinate(
            disks_[k], std::conj(geodesic_point(disks_[it->core_disk], it->s_start)));
        const double me = geodesic_coordinate(
            disks_[k], std::conj(geodesic_point(disks_[it->core_disk], it->s_end)));
        arcs_.push_back({k, total_length_ - it->y_end, total_length_ - it->y_start, me, ms});
    }
}

double BoundaryParametrization::reduce(double y) const {
    double v = std::fmod(y, total_length_);
    if (v < 0) v += total_length_;
    // Snap to corner values so that round-off in y cannot flip the choice of
    // lift at a corner.
    for (const auto& a : arcs_)
        if (std::abs(v - a.y_start) < 1e-9) return a.y_start;
    if (std::abs(v - total_length_) < 1e-9) return 0.0;
    return v;
}

const BoundaryArc& BoundaryParametrization::arc_at(double y) const {
    const double v = reduce(y);
    // At corner values two arcs meet; pick the incoming arc on the first
    // half-loop and the outgoing arc on the second, so that the lifts chosen
    // at y and -y are exact conjugates of each other.
    if (v <= total_length_ / 2) {
        for (const auto& a : arcs_)
            if (v <= a.y_end && v >= a.y_start - tol::kPairing) return a;
    } else {
        for (auto it = arcs_.rbegin(); it != arcs_.rend(); ++it)
            if (v >= it->y_start && v <= it->y_end + tol::kPairing) return *it;
    }
    throw DomainError("boundary parametrization: y out of range");
}

Complex BoundaryParametrization::point(double y) const {
    const double v = reduce(y);
    const BoundaryArc& a = arc_at(v);
    const double sgn = (a.s_end >= a.s_start) ? 1.0 : -1.0;
    return geodesic_point(disks_[a.core_disk], a.s_start + sgn * (v - a.y_start));
}

Complex BoundaryParametrization::tangent(double y) const {
    const double v = reduce(y);
    const BoundaryArc& a = arc_at(v);
    const double sgn = (a.s_end >= a.s_start) ? 1.0 : -1.0;
    Complex t = geodesic_tangent(disks_[a.core_disk], a.s_start + sgn * (v - a.y_start));
    return sgn > 0 ? t : -t;
}

}  // namespace cyleig
