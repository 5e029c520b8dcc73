#include "ramansim/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include "ramansim/error.hpp"

namespace ramansim {
namespace {

// Kronrod 15-point abscissae (non-negative half) and weights; Gauss 7-point weights
// attach to the odd Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const ComplexIntegrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx kron = fc * kWgk[7];
    cplx gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const cplx s = f(c - dx) + f(c + dx);
        kron += kWgk[j] * s;
        if (j % 2 == 1) gauss += kWg[j / 2] * s;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

void QuadSettings::validate() const {
    if (!(rel_tol > 0) || !(abs_tol >= 0)) throw ConfigError("quad: tolerances must be positive");
    if (!(window_sigmas >= 20.0))
        throw ConfigError("quad: window_sigmas must be at least 20 (window must cover the amplitude support)");
    if (max_intervals < 1) throw ConfigError("quad: max_intervals must be positive");
}

QuadResult integrate_gk(const ComplexIntegrand& f, double a, double b, const QuadSettings& s,
                        const std::vector<double>& breakpoints) {
    std::vector<double> edges{a};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<Segment> heap;
    cplx total{0.0, 0.0};
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Segment seg = gk15(f, edges[i], edges[i + 1]);
        total += seg.value;
        err += seg.error;
        heap.push(seg);
    }
    int count = static_cast<int>(heap.size());
    auto tolerance = [&] { return std::max(s.abs_tol, s.rel_tol * std::abs(total)); };
    while (err > tolerance()) {
        if (count >= s.max_intervals) {
            std::ostringstream msg;
            msg << "adaptive quadrature did not converge: estimate |I|=" << std::abs(total)
                << ", error bound " << err << " after " << count << " intervals";
            throw ConvergenceError(msg.str(), std::abs(total), err);
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Recompute the sums from the final partition to shed accumulated rounding.
    cplx sum{0.0, 0.0};
    double esum = 0.0;
    std::vector<Segment> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    for (const auto& sg : segs) {
        sum += sg.value;
        esum += sg.error;
    }
    return {sum, esum, count};
}

}  // namespace ramansim
