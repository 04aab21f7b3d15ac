#include "cfs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace cfs::quad {

namespace {

constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067392812, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes xgk[1], xgk[3], ..., xgk[9].
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Piece {
    double a, b;
    Vec value, error, l1;
    double priority;
    long order;
};

struct ByPriority {
    bool operator()(const Piece& x, const Piece& y) const {
        if (x.priority != y.priority) return x.priority < y.priority;
        return x.order > y.order;
    }
};

Piece rule(const std::function<Vec(double)>& f, int dim, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Vec k = Vec::Zero(dim), g = Vec::Zero(dim), l1 = Vec::Zero(dim);
    const Vec fc = f(c);
    k += wgk[10] * fc;
    l1 += wgk[10] * fc.abs();
    for (int j = 0; j < 10; ++j) {
        const Vec f1 = f(c - h * xgk[j]);
        const Vec f2 = f(c + h * xgk[j]);
        k += wgk[j] * (f1 + f2);
        l1 += wgk[j] * (f1.abs() + f2.abs());
        if (j % 2 == 1) g += wg[j / 2] * (f1 + f2);
    }
    Piece p{a, b, k * h, ((k - g) * h).abs(), l1 * std::abs(h), 0.0, 0};
    return p;
}

}  // namespace

Result integrate(const std::function<Vec(double)>& f, int dim, double a, double b,
                 const std::vector<double>& breaks, const Options& opt) {
    std::vector<double> pts{a};
    for (double x : breaks)
        if (x > a && x < b) pts.push_back(x);
    std::sort(pts.begin() + 1, pts.end());
    pts.push_back(b);

    const int nc = opt.controlled < 0 ? dim : opt.controlled;
    long counter = 0;
    std::priority_queue<Piece, std::vector<Piece>, ByPriority> heap;
    Result res;
    res.value = Vec::Zero(dim);
    res.error = Vec::Zero(dim);
    res.l1 = Vec::Zero(dim);

    auto push = [&](Piece p) {
        p.order = counter++;
        res.value += p.value;
        res.error += p.error;
        res.l1 += p.l1;
        heap.push(std::move(p));
    };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1] > pts[i]) push(rule(f, dim, pts[i], pts[i + 1]));

    auto targets = [&]() {
        Vec t(nc);
        for (int i = 0; i < nc; ++i)
            t[i] = std::max({opt.rel_tol * std::abs(res.value[i]), opt.l1_floor * res.l1[i],
                             opt.abs_tol, 1e-300});
        return t;
    };
    auto done = [&](const Vec& t) {
        for (int i = 0; i < nc; ++i)
            if (res.error[i] > t[i]) return false;
        return true;
    };

    // Priorities depend on the current targets; refresh them when rebuilding.
    Vec tgt = targets();
    auto prio = [&](const Piece& p) {
        double s = 0.0;
        for (int i = 0; i < nc; ++i) s = std::max(s, p.error[i] / tgt[i]);
        return s;
    };
    auto rebuild = [&]() {
        std::vector<Piece> all;
        while (!heap.empty()) {
            all.push_back(heap.top());
            heap.pop();
        }
        for (auto& p : all) {
            p.priority = prio(p);
            heap.push(std::move(p));
        }
    };
    rebuild();

    int steps = 0;
    while (true) {
        tgt = targets();
        if (done(tgt)) {
            res.converged = true;
            break;
        }
        if (static_cast<int>(heap.size()) >= opt.max_intervals) break;
        if (++steps % 64 == 0) rebuild();
        Piece p = heap.top();
        heap.pop();
        res.value -= p.value;
        res.error -= p.error;
        res.l1 -= p.l1;
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {
            // Interval cannot be split further in floating point.
            res.value += p.value;
            res.error += p.error;
            res.l1 += p.l1;
            break;
        }
        Piece left = rule(f, dim, p.a, mid);
        Piece right = rule(f, dim, mid, p.b);
        left.priority = prio(left);
        right.priority = prio(right);
        push(std::move(left));
        push(std::move(right));
    }
    // Recompute totals from the pieces to avoid drift from repeated add/subtract.
    Vec v = Vec::Zero(dim), e = Vec::Zero(dim), l = Vec::Zero(dim);
    std::vector<Piece> all;
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
    for (const auto& p : all) {
        v += p.value;
        e += p.error;
        l += p.l1;
    }
    res.value = v;
    res.error = e;
    res.l1 = l;
    res.intervals = static_cast<int>(all.size());
    if (!res.converged) {
        tgt = targets();
        res.converged = done(tgt);
    }
    return res;
}

}  // namespace cfs::quad
