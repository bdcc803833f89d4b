#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "spq/corep.hpp"

namespace spq {

namespace {

std::vector<Arrow> layer_for(int i, int n) {
  std::vector<Arrow> out;
  const int d = 2 * n;
  std::vector<bool> special(static_cast<std::size_t>(d + 1), false);
  auto add = [&](int from, int to, ArrowKind k, std::string label) {
    out.push_back({from, to, k, std::move(label)});
    special[static_cast<std::size_t>(from)] = true;
  };
  if (i < n) {
    add(i, i, ArrowKind::horizontal, "-");
    add(i, i + 1, ArrowKind::up, "+");
    add(i + 1, i + 1, ArrowKind::horizontal, "+");
    add(i + 1, i, ArrowKind::down, "+");
    add(2 * n - i, 2 * n - i, ArrowKind::horizontal, "-");
    add(2 * n - i, 2 * n - i + 1, ArrowKind::up, "-");
    add(2 * n - i + 1, 2 * n - i + 1, ArrowKind::horizontal, "+");
    add(2 * n - i + 1, 2 * n - i, ArrowKind::down, "-");
  } else {
    add(n, n, ArrowKind::horizontal, "--");
    add(n, n + 1, ArrowKind::up, "++");
    add(n + 1, n + 1, ArrowKind::horizontal, "++");
    add(n + 1, n, ArrowKind::down, "++");
  }
  for (int r = 1; r <= d; ++r)
    if (!special[static_cast<std::size_t>(r)]) out.push_back({r, r, ArrowKind::identity, ""});
  std::sort(out.begin(), out.end(), [](const Arrow& a, const Arrow& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  return out;
}

}  // namespace

Diagram export_diagram(const WeylWord& w) {
  validate(w);
  if (w.n < 2) throw std::invalid_argument("diagram: rank n must be >= 2");
  Diagram d{w, {}};
  for (int l : w.letters) d.layers.push_back(layer_for(l, w.n));
  return d;
}

FockFactor arrow_operator(const Arrow& a, int D, double q) {
  auto f = [&](Primitive p) { return primitive_factor(p, D, q); };
  switch (a.kind) {
    case ArrowKind::identity: return f(Primitive::id());
    case ArrowKind::horizontal:
      if (a.label == "+") return f(Primitive::Sstar()) * f(Primitive::sqrt1m2());
      if (a.label == "-") return f(Primitive::sqrt1m2()) * f(Primitive::S());
      if (a.label == "++") return f(Primitive::Sstar()) * f(Primitive::sqrt1m4());
      if (a.label == "--") return f(Primitive::sqrt1m4()) * f(Primitive::S());
      break;
    case ArrowKind::up:
      if (a.label == "+") return f(Primitive::qpow(1, 1)).scaled(-1.0);
      if (a.label == "-") return f(Primitive::qpow(1, 1));
      if (a.label == "++") return f(Primitive::qpow(2, 2)).scaled(-1.0);
      break;
    case ArrowKind::down:
      if (a.label == "+") return f(Primitive::qpow(1, 0));
      if (a.label == "-") return f(Primitive::qpow(1, 0)).scaled(-1.0);
      if (a.label == "++") return f(Primitive::qpow(2, 0));
      break;
  }
  throw std::invalid_argument("arrow label '" + a.label + "' not valid for its direction");
}

std::vector<bool> reachability(const Diagram& d) {
  const int dim = 2 * d.word.n;
  const auto nd = static_cast<std::size_t>(dim);
  std::vector<bool> reach(nd * nd, false);
  for (std::size_t i = 0; i < nd; ++i) reach[i * nd + i] = true;
  for (const auto& layer : d.layers) {
    std::vector<bool> next(nd * nd, false);
    for (std::size_t i = 0; i < nd; ++i)
      for (const auto& a : layer)
        if (reach[i * nd + static_cast<std::size_t>(a.from - 1)]) next[i * nd + static_cast<std::size_t>(a.to - 1)] = true;
    reach = std::move(next);
  }
  return reach;
}

std::string to_dot(const Diagram& d) {
  const int dim = 2 * d.word.n;
  std::ostringstream os;
  os << "digraph word {\n  rankdir=LR;\n  node [shape=point];\n";
  os << "  label=\"" << (d.word.letters.empty() ? std::string("I") : format_word(d.word)) << "\";\n";
  for (std::size_t c = 0; c <= d.layers.size(); ++c) {
    os << "  { rank=same;";
    for (int r = dim; r >= 1; --r) os << " c" << c << "_r" << r << ';';
    os << " }\n";
  }
  for (std::size_t c = 0; c < d.layers.size(); ++c)
    for (const auto& a : d.layers[c]) {
      os << "  c" << c << "_r" << a.from << " -> c" << c + 1 << "_r" << a.to;
      if (!a.label.empty()) os << " [label=\"" << a.label << "\"]";
      os << ";\n";
    }
  if (d.layers.empty())
    for (int r = 1; r <= dim; ++r) os << "  c0_r" << r << " -> c0_r" << r << "_out;\n";
  os << "}\n";
  return os.str();
}

std::string to_ascii(const Diagram& d) {
  // One row per index, one 10-character cell per letter: horizontal label,
  // then the outgoing diagonal ("/" up, "\" down) with its label.
  const int dim = 2 * d.word.n;
  constexpr int W = 10;
  std::ostringstream os;
  os << "      ";
  for (int l : d.word.letters) os << std::left << std::setw(W) << ("s" + std::to_string(l));
  os << '\n';
  for (int r = dim; r >= 1; --r) {
    os << std::right << std::setw(4) << r << "  ";
    for (const auto& layer : d.layers) {
      std::string h = "=", diag;
      for (const auto& a : layer) {
        if (a.from != r) continue;
        if (a.kind == ArrowKind::horizontal) h = a.label;
        if (a.kind == ArrowKind::up) diag = "/" + a.label;
        if (a.kind == ArrowKind::down) diag = "\\" + a.label;
      }
      std::string cell = h + (diag.empty() ? "" : " " + diag);
      os << std::left << std::setw(W) << cell;
    }
    if (d.layers.empty()) os << "=";
    os << '\n';
  }
  return os.str();
}

}  // namespace spq
