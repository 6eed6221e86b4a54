#include "dmop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "dmop/csv.hpp"

namespace dmop {

const char* change_type_name(ChangeType t) {
    switch (t) {
        case ChangeType::TypeI: return "Type I";
        case ChangeType::TypeII: return "Type II";
        case ChangeType::TypeIII: return "Type III";
        case ChangeType::TypeIV: return "Type IV";
    }
    return "?";
}

const char* order_class_name(const OrderClass& c) {
    switch (c.level) {
        case OrderClass::Level::Static: return "static";
        case OrderClass::Level::FirstOrder: return "first order";
        case OrderClass::Level::SecondOrder: return "second order";
        case OrderClass::Level::ThirdOrder: return "third order";
        case OrderClass::Level::FourthOrder: return "fourth order";
    }
    return "?";
}

OrderClass order_of(const DynamicProblem& problem) {
    OrderClass c;
    switch (problem.order()) {
        case Order::Static:
            c.level = OrderClass::Level::Static;
            break;
        case Order::First:
            c.level = OrderClass::Level::FirstOrder;
            break;
        case Order::Second:
            c.level = OrderClass::Level::SecondOrder;
            break;
        case Order::ThirdParam:
        case Order::ThirdFunc:
            c.level = OrderClass::Level::ThirdOrder;
            c.states = OrderClass::States::Correlated;
            break;
        case Order::Fourth:
            c.level = OrderClass::Level::FourthOrder;
            break;
    }
    return c;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double directed_hausdorff(const std::vector<std::vector<double>>& a,
                          const std::vector<std::vector<double>>& b) {
    double worst = 0.0;
    for (const auto& p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : b) best = std::min(best, sq_dist(p, q));
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

} // namespace

double hausdorff(const std::vector<std::vector<double>>& a,
                 const std::vector<std::vector<double>>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty set");
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double default_change_eps(const Bounds& bounds, std::size_t grid_per_dim) {
    double diag = 0.0;
    for (std::size_t i = 0; i < bounds.dimension(); ++i) {
        double cell = (bounds.upper[i] - bounds.lower[i]) / static_cast<double>(grid_per_dim - 1);
        diag += cell * cell;
    }
    return 2.0 * std::sqrt(diag);
}

ChangeReport classify_change(const DynamicProblem& problem, const std::vector<double>& times,
                             std::size_t grid_per_dim, double eps, std::size_t budget) {
    if (times.size() < 2)
        throw std::invalid_argument("classify_change: need at least 2 sampled times");
    ChangeReport rep;
    for (double t : times) rep.snapshots.push_back(brute_force_front(problem, t, grid_per_dim, budget));

    bool any_pos = false, any_pof = false;
    for (std::size_t i = 1; i < rep.snapshots.size(); ++i) {
        const auto& prev = rep.snapshots[i - 1];
        const auto& cur = rep.snapshots[i];
        double dpos = hausdorff(prev.pos, cur.pos);
        double dpof = hausdorff(prev.pof, cur.pof);
        bool pos_changed = dpos > eps;
        bool pof_changed = dpof > eps;
        any_pos |= pos_changed;
        any_pof |= pof_changed;
        rep.rows.push_back({cur.t, pos_changed, pof_changed, dpos, dpof});
    }
    if (any_pos && any_pof)
        rep.type = ChangeType::TypeII;
    else if (any_pos)
        rep.type = ChangeType::TypeI;
    else if (any_pof)
        rep.type = ChangeType::TypeIII;
    else
        rep.type = ChangeType::TypeIV;
    return rep;
}

ChangeType classify_change_type(const DynamicProblem& problem, const std::vector<double>& times,
                                std::size_t grid_per_dim, double eps, std::size_t budget) {
    return classify_change(problem, times, grid_per_dim, eps, budget).type;
}

double igd(const std::vector<ObjectiveVector>& approx,
           const std::vector<ObjectiveVector>& reference) {
    if (approx.empty() || reference.empty()) throw std::invalid_argument("igd: empty set");
    double sum = 0.0;
    for (const auto& r : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : approx) best = std::min(best, sq_dist(r, a));
        sum += std::sqrt(best);
    }
    return sum / static_cast<double>(reference.size());
}

double hypervolume_2d(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref_point,
                      std::size_t* warning_count) {
    if (ref_point.size() != 2) throw std::invalid_argument("hypervolume_2d: k must be 2");
    std::vector<ObjectiveVector> pts;
    std::size_t dropped = 0;
    for (const auto& p : front) {
        if (p.size() != 2) throw std::invalid_argument("hypervolume_2d: k must be 2");
        if (dominates(p, ref_point))
            pts.push_back(p);
        else
            ++dropped;
    }
    if (warning_count) *warning_count = dropped;
    if (pts.empty()) return 0.0;

    std::sort(pts.begin(), pts.end());
    double hv = 0.0;
    double prev_f2 = ref_point[1];
    for (const auto& p : pts) {
        if (p[1] < prev_f2) {
            hv += (ref_point[0] - p[0]) * (prev_f2 - p[1]);
            prev_f2 = p[1];
        }
    }
    return hv;
}

void write_classification_csv(std::ostream& os, const OrderClass& order,
                              const ChangeReport& report) {
    os << "t,pos_changed,pof_changed,order,type,igd,hv\n";
    // hv reference: componentwise max over all snapshots, padded.
    ObjectiveVector ref;
    bool two_obj = !report.snapshots.empty() && report.snapshots.front().pof.front().size() == 2;
    if (two_obj) {
        ref.assign(2, -std::numeric_limits<double>::infinity());
        for (const auto& s : report.snapshots)
            for (const auto& f : s.pof)
                for (int i = 0; i < 2; ++i) ref[i] = std::max(ref[i], f[i]);
        for (double& v : ref) v += 1.0;
    }
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        const auto& snap = report.snapshots[i + 1];
        os << format_double(row.t) << "," << (row.pos_changed ? 1 : 0) << ","
           << (row.pof_changed ? 1 : 0) << "," << order_class_name(order) << ","
           << change_type_name(report.type) << ","
           << format_double(igd(snap.pof, report.snapshots.front().pof)) << ",";
        if (two_obj)
            os << format_double(hypervolume_2d(snap.pof, ref));
        os << "\n";
    }
}

} // namespace dmop
