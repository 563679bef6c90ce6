#include "recplant/world/arena.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace recplant::world {

const char* material_name(Material m) {
    switch (m) {
    case Material::Plastic: return "plastic";
    case Material::Metal: return "metal";
    case Material::Paper: return "paper";
    case Material::Hazardous: return "hazardous";
    }
    return "?";
}

std::optional<Material> material_from(const std::string& s) {
    if (s == "plastic") return Material::Plastic;
    if (s == "metal") return Material::Metal;
    if (s == "paper") return Material::Paper;
    if (s == "hazardous") return Material::Hazardous;
    return std::nullopt;
}

const char* step_result_name(StepResult r) {
    switch (r) {
    case StepResult::Success: return "success";
    case StepResult::WrongOrder: return "wrong_order";
    case StepResult::BadParams: return "bad_params";
    case StepResult::NoDevice: return "no_device";
    case StepResult::Busy: return "busy";
    }
    return "?";
}

Vec2 Conveyor::at(double s) const {
    if (points.empty()) return {0, 0};
    s = std::clamp(s, 0.0, length);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        double seg = distance(points[i], points[i + 1]);
        if (s <= seg || i + 2 == points.size()) {
            double t = seg > 0 ? std::min(s / seg, 1.0) : 0.0;
            return points[i] + (points[i + 1] - points[i]) * t;
        }
        s -= seg;
    }
    return points.back();
}

int ArenaMap::cell_of(const Vec2& p) const {
    int cx = std::clamp(static_cast<int>(p.x / cell_size), 0, cols() - 1);
    int cy = std::clamp(static_cast<int>(p.y / cell_size), 0, rows() - 1);
    return cy * cols() + cx;
}

bool ArenaMap::cell_free(int cx, int cy) const {
    if (cx < 0 || cy < 0 || cx >= cols() || cy >= rows()) return false;
    Vec2 c{(cx + 0.5) * cell_size, (cy + 0.5) * cell_size};
    for (const auto& r : obstacles)
        if (r.contains(c)) return false;
    for (const auto& b : benches)
        if (b.body.contains(c)) return false;
    return true;
}

int ArenaMap::free_cell_count() const {
    int n = 0;
    for (int y = 0; y < rows(); ++y)
        for (int x = 0; x < cols(); ++x)
            if (cell_free(x, y)) ++n;
    return n;
}

const BenchSpec* ArenaMap::bench(const std::string& id) const {
    for (const auto& b : benches)
        if (b.id == id) return &b;
    return nullptr;
}

std::vector<std::string> ArenaMap::finalize() {
    std::vector<std::string> problems;
    if (width <= 0 || height <= 0) problems.push_back("arena: width/height must be positive");
    if (cell_size <= 0) problems.push_back("arena: cell_size must be positive");

    // bench footprints, bin slots, cue ids and conveyor stations
    constexpr double kBenchHalfW = 0.4, kBenchHalfH = 0.3;
    for (std::size_t bi = 0; bi < benches.size(); ++bi) {
        auto& b = benches[bi];
        b.cue = 2 + static_cast<int>(bi) * 5;
        for (int m = 0; m < 4; ++m) b.bin_cues[m] = b.cue + 1 + m;
        b.body = Rect{b.pose.x - kBenchHalfW, b.pose.y - kBenchHalfH, 2 * kBenchHalfW,
                      2 * kBenchHalfH};
        Vec2 dir{std::cos(b.pose.heading), std::sin(b.pose.heading)};
        Vec2 perp{-dir.y, dir.x};
        for (int k = 0; k < 4; ++k)
            b.bin_slots[k] = b.pose.position() + dir * 0.65 + perp * ((k - 1.5) * 0.3);
        for (const auto& o : obstacles)
            if (segment_intersects_rect({b.body.x, b.body.y},
                                        {b.body.x + b.body.w, b.body.y + b.body.h}, o))
                problems.push_back("arena: bench " + b.id + " overlaps an obstacle");
        if (!conveyor.points.empty()) {
            double best_s = 0, best_d = 1e18, acc = 0;
            for (std::size_t i = 0; i + 1 < conveyor.points.size(); ++i) {
                Vec2 a = conveyor.points[i], c = conveyor.points[i + 1];
                double seg = distance(a, c);
                const int samples = std::max(2, static_cast<int>(seg / 0.1));
                for (int s = 0; s <= samples; ++s) {
                    double t = static_cast<double>(s) / samples;
                    Vec2 p = a + (c - a) * t;
                    double d = distance(p, b.pose.position());
                    if (d < best_d) {
                        best_d = d;
                        best_s = acc + seg * t;
                    }
                }
                acc += seg;
            }
            b.conveyor_station = best_s;
        }
    }

    conveyor.length = 0;
    for (std::size_t i = 0; i + 1 < conveyor.points.size(); ++i)
        conveyor.length += distance(conveyor.points[i], conveyor.points[i + 1]);

    // collision segments: arena boundary, obstacles, benches
    segments_.clear();
    std::vector<std::pair<Vec2, Vec2>> es;
    Rect bounds{0, 0, width, height};
    bounds.edges(es);
    for (const auto& r : obstacles) r.edges(es);
    for (const auto& b : benches) b.body.edges(es);
    for (auto& e : es) segments_.push_back({e.first, e.second});

    auto reach = validate_reachability();
    problems.insert(problems.end(), reach.begin(), reach.end());
    return problems;
}

std::vector<std::string> ArenaMap::validate_reachability() const {
    std::vector<std::string> problems;
    if (benches.empty()) return problems;
    const int w = cols(), h = rows();
    std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
    int start = cell_of(home_zone.center());
    if (!cell_free(start % w, start / w)) {
        problems.push_back("arena: home zone center is not free space");
        return problems;
    }
    std::deque<int> q{start};
    seen[start] = 1;
    while (!q.empty()) {
        int c = q.front();
        q.pop_front();
        int cx = c % w, cy = c / w;
        const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int nx = cx + dx[k], ny = cy + dy[k];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            int nc = ny * w + nx;
            if (seen[nc] || !cell_free(nx, ny)) continue;
            seen[nc] = 1;
            q.push_back(nc);
        }
    }
    for (const auto& b : benches) {
        bool ok = false;
        for (const auto& slot : b.bin_slots) {
            int c = cell_of(slot);
            if (cell_free(c % w, c / w) && seen[c]) ok = true;
        }
        if (!ok) problems.push_back("arena: bench " + b.id + " unreachable from home zone");
    }
    return problems;
}

} // namespace recplant::world
