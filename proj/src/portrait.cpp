// Poincare-disc portrait of a restricted planar system.

#include <cmath>
#include <cstdio>

#include "emdyn/errors.hpp"
#include "emdyn/report.hpp"
#include "emdyn/restrict.hpp"

namespace emdyn {

using nlohmann::json;

namespace {

struct Canvas {
  int size;
  std::string body;

  // the disc fills 95% of the square
  std::pair<double, double> px(const std::vector<double>& b) const {
    double h = size / 2.0;
    return {h * (1 + 0.95 * b[0]), h * (1 - 0.95 * b[1])};
  }

  void polyline(const std::vector<std::vector<double>>& ball, const char* colour, double width) {
    if (ball.size() < 2) return;
    std::string pts;
    double lx = 1e300, ly = 1e300;
    char buf[64];
    for (std::size_t i = 0; i < ball.size(); ++i) {
      auto [x, y] = px(ball[i]);
      if (i + 1 < ball.size() && std::hypot(x - lx, y - ly) < 1) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", x, y);
      pts += buf;
      lx = x;
      ly = y;
    }
    std::snprintf(buf, sizeof buf, "%.2f", width);
    body += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"" + buf + "\" points=\"" +
            pts + "\"/>\n";
  }

  void marker(const std::vector<double>& b, EquilibriumType t) {
    auto [x, y] = px(b);
    char buf[200];
    switch (t) {
      case EquilibriumType::saddle:
        std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%.2f\" width=\"8\" height=\"8\" fill=\"#c0392b\"/>\n", x - 4, y - 4);
        break;
      case EquilibriumType::attracting_focus:
      case EquilibriumType::attracting_node:
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"5\" fill=\"black\"/>\n", x, y);
        break;
      case EquilibriumType::repelling_focus:
      case EquilibriumType::repelling_node:
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"5\" fill=\"white\" stroke=\"black\"/>\n", x, y);
        break;
      default:
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"5\" fill=\"#e67e22\" stroke=\"black\"/>\n", x, y);
    }
    body += buf;
  }

  std::string svg() const {
    char head[400];
    double h = size / 2.0;
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n"
                  "<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n"
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
                  size, size, size, size, h, h, 0.95 * h);
    return head + body + "</svg>\n";
  }
};

std::vector<std::vector<double>> to_ball(const OrbitRecord& rec) {
  std::vector<std::vector<double>> out;
  for (const auto& s : rec.samples)
    out.push_back(s.chart == "finite" ? finite_to_ball(s.state) : chart_to_ball(s.state, ChartId::parse(s.chart, 2)));
  return out;
}

// Pieces of a curve inside radius 0.995, each with its neighbouring rim point;
// orbits that wind along the boundary would otherwise redraw the circle.
void draw_clipped(Canvas& canvas, const std::vector<std::vector<double>>& ball, const char* colour, double width) {
  auto inside = [&](std::size_t i) { return std::hypot(ball[i][0], ball[i][1]) <= 0.995; };
  const std::size_t n = ball.size();
  std::vector<std::vector<double>> piece;
  for (std::size_t i = 0; i < n; ++i) {
    bool before = i > 0 && inside(i - 1), after = i + 1 < n && inside(i + 1);
    if (inside(i) || before || after) piece.push_back(ball[i]);
    // a rim point that leaves the interior closes the piece
    if (!inside(i) && !after) {
      canvas.polyline(piece, colour, width);
      piece.clear();
    }
  }
  canvas.polyline(piece, colour, width);
}

}  // namespace

Portrait restricted_portrait(const ExactParameters& params, const PortraitOptions& opt) {
  if (opt.grid < 1 || opt.grid > 40) throw UsageError("grid: must lie in 1..40");
  if (!(opt.max_time > 0)) throw UsageError("max_time: must be positive");
  if (opt.size < 64) throw UsageError("size: at least 64 pixels");

  std::optional<RestrictedSystem> rs;
  for (const auto& sf : find_surfaces_numeric(params)) {
    try {
      rs = restrict(sf, params);
      break;
    } catch (const UnsupportedError&) {
    }
  }
  if (!rs) throw UsageError("params: " + describe(params) + " carry no invariant surface that is a graph over two coordinates");

  const PolyVectorField& field = rs->field;
  const std::string& label = rs->surface.label;
  std::vector<EquilibriumReport> finite, infinite;
  if (label == "a") {
    for (const auto& root : solve_equilibrium_cubic(params.c, params.r)) finite.push_back(classify_restricted_a(root, params.c, params.r));
    infinite = infinite_equilibria_2d(field);
  } else {
    double c = to_double(params.c);
    auto q = restricted_b_equilibrium(c);
    finite.push_back(classify_restricted_b(q[0], q[1], c));
    infinite = infinite_equilibria_restricted_b(params.c);
  }

  std::vector<CaptureTarget> targets;
  for (std::size_t i = 0; i < finite.size(); ++i) targets.push_back({"E" + std::to_string(i), finite[i].location});

  IntegratorConfig cfg;
  cfg.max_time = opt.max_time;
  cfg.max_steps = 50'000;
  // Near infinity the angular speed grows like |x|^2, so move to a chart
  // early and sample finely; chart segments are sampled in chart time.
  cfg.chart_switch_threshold = 4;
  cfg.sample_dt = 0.01;
  cfg.infinity_radius = 1e-2;  // approach to the y-axis ends is algebraic in chart time; the rim is 1e-2 away at drawing scale
  Canvas canvas{opt.size, ""};
  json data{{"surface", label}, {"coords", field.coords()}};

  // sampled orbits from a grid over the open disc, both directions
  json orbits = json::array();
  for (int i = 0; i < opt.grid; ++i)
    for (int j = 0; j < opt.grid; ++j) {
      double bx = opt.grid == 1 ? 0 : -0.9 + 1.8 * i / (opt.grid - 1);
      double by = opt.grid == 1 ? 0 : -0.9 + 1.8 * j / (opt.grid - 1);
      double b2 = bx * bx + by * by;
      if (b2 >= 0.95 * 0.95) continue;
      double k = 1 / std::sqrt(1 - b2);
      std::vector<double> x0{bx * k, by * k};
      json entry{{"seed", x0}};
      for (bool back : {false, true}) {
        cfg.backward = back;
        auto rec = integrate(field, x0, cfg, {}, targets);
        draw_clipped(canvas, to_ball(rec), "#7f8c8d", 0.8);
        entry[back ? "backward" : "forward"] = rec.limit_tag.to_string();
      }
      orbits.push_back(entry);
    }
  data["orbits"] = orbits;

  // separatrix approximations from the eigenvectors of saddles and saddle-nodes
  json seps = json::array();
  auto J = jacobian(field);
  for (std::size_t e = 0; e < finite.size(); ++e) {
    const auto& eq = finite[e];
    if (eq.type != EquilibriumType::saddle && eq.type != EquilibriumType::semi_hyperbolic_saddle_node) continue;
    // the trace starts inside its own capture radius
    std::vector<CaptureTarget> others;
    for (const auto& t : targets)
      if (t.id != "E" + std::to_string(e)) others.push_back(t);
    double a = J[0][0].evaluate(eq.location), b = J[0][1].evaluate(eq.location);
    double c = J[1][0].evaluate(eq.location), d = J[1][1].evaluate(eq.location);
    for (const auto& lam : eq.eigenvalues) {
      double l = lam.real();
      std::array<double, 2> v = std::abs(b) >= std::abs(c) ? std::array<double, 2>{b, l - a} : std::array<double, 2>{l - d, c};
      double n = std::hypot(v[0], v[1]);
      if (n == 0) v = {1, 0}, n = 1;
      for (int sgn : {1, -1}) {
        std::vector<double> x0{eq.location[0] + sgn * 1e-5 * v[0] / n, eq.location[1] + sgn * 1e-5 * v[1] / n};
        std::vector<bool> dirs;
        if (l >= 0) dirs.push_back(false);
        if (l <= 0) dirs.push_back(true);
        for (bool back : dirs) {
          cfg.backward = back;
          auto rec = integrate(field, x0, cfg, {}, others);
          draw_clipped(canvas, to_ball(rec), "#c0392b", 1.6);
          seps.push_back({{"from", "E" + std::to_string(e)},
                          {"eigenvalue", l},
                          {"side", sgn},
                          {"direction", back ? "backward" : "forward"},
                          {"limit_tag", rec.limit_tag.to_string()}});
        }
      }
    }
  }
  data["separatrices"] = seps;

  json fin = json::array();
  for (std::size_t e = 0; e < finite.size(); ++e) {
    json j = to_json(finite[e]);
    j["id"] = "E" + std::to_string(e);
    j["ball"] = finite_to_ball(finite[e].location);
    canvas.marker(finite_to_ball(finite[e].location), finite[e].type);
    fin.push_back(j);
  }
  data["finite_equilibria"] = fin;
  json inf = json::array();
  for (const auto& eq : infinite) {
    json j = to_json(eq);
    if (eq.location.size() == 2) {
      auto ball = chart_to_ball(eq.location, ChartId::parse(eq.chart, 2));
      j["ball"] = ball;
      canvas.marker(ball, eq.type);
    }
    inf.push_back(j);
  }
  data["infinite_equilibria"] = inf;
  return {canvas.svg(), data};
}

}  // namespace emdyn
