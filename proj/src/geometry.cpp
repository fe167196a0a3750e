#include "mss/geometry.hpp"

#include "mss/error.hpp"

namespace mss {

namespace {

Vec2 canonical_sign(Vec2 v) {
    if (v.x < -1e-12 || (std::abs(v.x) <= 1e-12 && v.y < 0)) return -v;
    return v;
}

Vec2 real_eigenvector(const Mat2& m, double lam) {
    // Pick the better conditioned row of (m - lam I).
    Vec2 r1{m.a - lam, m.b};
    Vec2 r2{m.c, m.d - lam};
    Vec2 r = norm(r1) >= norm(r2) ? r1 : r2;
    if (norm(r) < 1e-300) return {1.0, 0.0};
    return canonical_sign(normalized(Vec2{-r.y, r.x}));
}

}  // namespace

EigenData eigen2(const Mat2& m) {
    EigenData out;
    double tr = m.trace();
    double dt = m.det();
    double disc = tr * tr / 4.0 - dt;
    double scale = std::max(1.0, m.max_abs());
    // Finite-difference Jacobians of conformal points carry ~1e-10 noise.
    bool scalar = std::abs(m.b) <= 1e-8 * scale && std::abs(m.c) <= 1e-8 * scale &&
                  std::abs(m.a - m.d) <= 1e-8 * scale;
    if (scalar) {
        out.real = true;
        out.values = {m.a, m.d};
        out.vectors = {Vec2{1, 0}, Vec2{0, 1}};
        if (std::abs(m.d) < std::abs(m.a)) {
            std::swap(out.values[0], out.values[1]);
            std::swap(out.vectors[0], out.vectors[1]);
        }
        return out;
    }
    if (disc >= 0) {
        double s = std::sqrt(disc);
        // Stable quadratic formula.
        double l1 = tr / 2.0 + (tr >= 0 ? s : -s);
        double l2 = l1 != 0.0 ? dt / l1 : tr / 2.0 - (tr >= 0 ? s : -s);
        if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);
        out.real = true;
        out.values = {l2, l1};
        out.vectors = {real_eigenvector(m, l2), real_eigenvector(m, l1)};
        return out;
    }
    double re = tr / 2.0;
    double im = std::sqrt(-disc);
    out.real = false;
    out.values = {std::complex<double>(re, im), std::complex<double>(re, -im)};
    // Eigenvector w of re+i*im: (m - lam) w = 0 with w = (b, lam - a) or (lam - d, c).
    std::complex<double> lam(re, im);
    std::complex<double> wx, wy;
    if (std::abs(m.b) >= std::abs(m.c)) {
        wx = m.b;
        wy = lam - m.a;
    } else {
        wx = lam - m.d;
        wy = m.c;
    }
    Vec2 u{wx.real(), wy.real()};
    Vec2 v{wx.imag(), wy.imag()};
    if (cross(u, v) < 0) v = -v;
    double n = std::max(norm(u), norm(v));
    out.vectors = {u / n, v / n};
    return out;
}

const char* error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NoInverse: return "NoInverse";
        case ErrorKind::ChartEscape: return "ChartEscape";
        case ErrorKind::NonOrientationPreserving: return "NonOrientationPreserving";
        case ErrorKind::NonHyperbolicOrbit: return "NonHyperbolicOrbit";
        case ErrorKind::NotASaddle: return "NotASaddle";
        case ErrorKind::OutsideN: return "OutsideN";
        case ErrorKind::ChartTooLarge: return "ChartTooLarge";
        case ErrorKind::DegenerateEigenframe: return "DegenerateEigenframe";
        case ErrorKind::TooShort: return "TooShort";
        case ErrorKind::TangencyDetected: return "TangencyDetected";
        case ErrorKind::CycleDetected: return "CycleDetected";
        case ErrorKind::NotTrapping: return "NotTrapping";
        case ErrorKind::NotInBasin: return "NotInBasin";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownMap: return "UnknownMap";
        case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

}  // namespace mss
