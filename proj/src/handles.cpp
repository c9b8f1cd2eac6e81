#include "kirbylab/handles.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace kirby::handles {

bool AmbientBasis::has(const std::string& label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

int AmbientBasis::index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw Error(ErrorCode::UnknownHandle, "no ambient generator " + label);
  return static_cast<int>(it - labels.begin());
}

void AmbientBasis::extend(const std::string& label, Int square) {
  if (has(label))
    throw Error(ErrorCode::LabelClash, "ambient generator " + label + " exists");
  if (square != 1 && square != -1)
    throw Error(ErrorCode::BadArgument, "generator square must be +1 or -1");
  labels.push_back(label);
  squares.push_back(square);
}

std::string HomologyClass::str(const AmbientBasis& basis) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeff.size(); ++i) {
    Int c = coeff[i];
    if (c == 0) continue;
    if (!first) os << " ";
    if (c == -1) os << "-";
    else if (c != 1) os << c;
    os << basis.labels[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Int pair(const AmbientBasis& basis, const HomologyClass& x, const HomologyClass& y) {
  if (x.coeff.size() != basis.labels.size() || y.coeff.size() != basis.labels.size())
    throw Error(ErrorCode::BadArgument, "class length does not match basis");
  Int acc = 0;
  for (size_t i = 0; i < basis.labels.size(); ++i)
    acc = add(acc, mul(basis.squares[i], mul(x.coeff[i], y.coeff[i])));
  return acc;
}

Int square(const AmbientBasis& basis, const HomologyClass& x) {
  return pair(basis, x, x);
}

const TwoHandle& Presentation::handle(const std::string& label) const {
  int i = handle_index(label);
  if (i < 0) throw Error(ErrorCode::UnknownHandle, "no 2-handle " + label);
  return two[static_cast<size_t>(i)];
}

int Presentation::handle_index(const std::string& label) const {
  for (size_t i = 0; i < two.size(); ++i)
    if (two[i].label == label) return static_cast<int>(i);
  return -1;
}

Int euler_characteristic(const Presentation& x) {
  return x.zero_handles - x.one_handles + static_cast<Int>(x.two.size()) -
         x.three_handles + x.four_handles;
}

std::string AbelianGroup::str() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (Int i = 0; i < free_rank; ++i) {
    os << (first ? "" : " + ") << "Z";
    first = false;
  }
  for (Int t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

namespace {

Matrix linking_matrix(const Presentation& x) {
  // rows: 2-handles, cols: 1-handles
  Matrix l(static_cast<int>(x.two.size()), x.one_handles);
  for (int i = 0; i < l.rows; ++i) {
    if (static_cast<int>(x.two[static_cast<size_t>(i)].links.size()) != x.one_handles)
      throw Error(ErrorCode::BadArgument,
                  "linking vector of " + x.two[static_cast<size_t>(i)].label +
                      " does not match the 1-handle count");
    for (int j = 0; j < l.cols; ++j)
      l.at(i, j) = x.two[static_cast<size_t>(i)].links[static_cast<size_t>(j)];
  }
  return l;
}

void check_framings(const Presentation& x) {
  if (!x.ambient) return;
  for (const auto& h : x.two)
    if (h.cls && h.framing != square(*x.ambient, *h.cls))
      throw Error(ErrorCode::BadArgument,
                  "framing of " + h.label + " does not equal its class square");
}

IntSymMatrix classed_gram(const Presentation& x) {
  if (!x.ambient) return IntSymMatrix(0);
  std::vector<const HomologyClass*> cs;
  for (const auto& h : x.two)
    if (h.cls) cs.push_back(&*h.cls);
  IntSymMatrix g(static_cast<int>(cs.size()));
  for (int i = 0; i < g.n; ++i)
    for (int j = i; j < g.n; ++j)
      g.set(i, j, pair(*x.ambient, *cs[static_cast<size_t>(i)], *cs[static_cast<size_t>(j)]));
  return g;
}

}  // namespace

Invariants invariants(const Presentation& x) {
  Invariants out;
  out.chi = euler_characteristic(x);
  Matrix l = linking_matrix(x);
  Int r = l.rows == 0 || l.cols == 0 ? 0 : lattice::rank(l);
  out.b2 = static_cast<Int>(x.two.size()) - r;
  // H1 shadow: cokernel of the linking map Z^{#2} -> Z^{#1}
  out.h1.free_rank = x.one_handles - r;
  if (l.rows > 0 && l.cols > 0) {
    lattice::SmithResult s = lattice::smith_normal_form(l.transposed());
    for (int t = 0; t < std::min(l.cols, l.rows); ++t)
      if (s.d.at(t, t) > 1) out.h1.torsion.push_back(s.d.at(t, t));
  }
  return out;
}

IntSymMatrix intersection_form(const Presentation& x) {
  if (!x.closed) throw Error(ErrorCode::NotClosed, "presentation is not closed");
  if (x.one_handles > 0)
    throw Error(ErrorCode::DanglingOneHandles,
                std::to_string(x.one_handles) + " uncancelled 1-handles");
  std::vector<std::string> labels;
  for (const auto& h : x.two) {
    if (!h.cls) throw Error(ErrorCode::MissingClass, h.label + " carries no class");
    labels.push_back(h.label);
  }
  if (labels.empty()) return IntSymMatrix(0);
  return gram_of(x, labels);
}

IntSymMatrix gram_of(const Presentation& x, const std::vector<std::string>& labels) {
  if (!x.ambient) throw Error(ErrorCode::NoAmbient, "presentation has no ambient basis");
  std::vector<const HomologyClass*> cs;
  for (const auto& label : labels) {
    const TwoHandle& h = x.handle(label);
    if (!h.cls) throw Error(ErrorCode::MissingClass, label + " carries no class");
    cs.push_back(&*h.cls);
  }
  IntSymMatrix g(static_cast<int>(cs.size()));
  for (int i = 0; i < g.n; ++i)
    for (int j = i; j < g.n; ++j)
      g.set(i, j, pair(*x.ambient, *cs[static_cast<size_t>(i)], *cs[static_cast<size_t>(j)]));
  return g;
}

std::optional<FormLedger> effective_ledger(const Presentation& x) {
  if (x.ledger) return x.ledger;
  if (!x.ambient) return std::nullopt;
  bool any = false;
  for (const auto& h : x.two)
    if (h.cls) { any = true; break; }
  if (!any) return std::nullopt;
  IntSymMatrix g = classed_gram(x);
  FormLedger l;
  l.rank = invariants(x).b2;
  l.sig = lattice::signature(g).sig;
  l.parity = lattice::parity(g);
  return l;
}

Presentation blow_up(const Presentation& x, Int sign, const std::string& new_label,
                     const std::vector<std::pair<std::string, Int>>& strands) {
  if (sign != 1 && sign != -1)
    throw Error(ErrorCode::BadArgument, "blowup sign must be +1 or -1");
  if (!x.ambient) throw Error(ErrorCode::NoAmbient, "blowup needs an ambient basis");
  Presentation y = x;
  if (y.ambient->has(new_label) || y.handle_index(new_label) >= 0)
    throw Error(ErrorCode::LabelClash, new_label + " already in use");
  for (const auto& [label, m] : strands) {
    const TwoHandle& h = x.handle(label);
    if (!h.cls) throw Error(ErrorCode::MissingClass, label + " carries no class");
    (void)m;
  }
  y.ambient->extend(new_label, sign);
  int e = y.ambient->size() - 1;
  for (auto& h : y.two)
    if (h.cls) h.cls->coeff.push_back(0);
  for (const auto& [label, m] : strands) {
    TwoHandle& h = y.two[static_cast<size_t>(y.handle_index(label))];
    h.cls->coeff[static_cast<size_t>(e)] = sub(h.cls->coeff[static_cast<size_t>(e)], m);
  }
  TwoHandle nh;
  nh.label = new_label;
  nh.cls = HomologyClass{std::vector<Int>(static_cast<size_t>(y.ambient->size()), 0)};
  nh.cls->coeff[static_cast<size_t>(e)] = 1;
  nh.links.assign(static_cast<size_t>(y.one_handles), 0);
  y.two.push_back(nh);
  for (auto& h : y.two)
    if (h.cls) h.framing = square(*y.ambient, *h.cls);
  check_framings(y);
  return y;
}

Presentation blow_down(const Presentation& x, const std::string& label) {
  if (!x.ambient) throw Error(ErrorCode::NoAmbient, "blowdown needs an ambient basis");
  const TwoHandle& h = x.handle(label);
  if (!h.cls) throw Error(ErrorCode::MissingClass, label + " carries no class");
  Int sq = square(*x.ambient, *h.cls);
  if (sq != 1 && sq != -1)
    throw Error(ErrorCode::NotExceptional,
                label + " has square " + std::to_string(sq));
  // the class must be a bare ambient generator (up to sign)
  int gen = -1;
  for (size_t i = 0; i < h.cls->coeff.size(); ++i) {
    Int c = h.cls->coeff[i];
    if (c == 0) continue;
    if (std::llabs(c) != 1 || gen >= 0)
      throw Error(ErrorCode::NotGenerator,
                  "class of " + label + " is not a bare ambient generator");
    gen = static_cast<int>(i);
  }
  if (gen < 0)
    throw Error(ErrorCode::NotGenerator, label + " has the zero class");
  for (Int l : h.links)
    if (l != 0)
      throw Error(ErrorCode::LinkedHandle, label + " links a 1-handle");

  Presentation y = x;
  const HomologyClass v = *h.cls;
  int vi = y.handle_index(label);
  for (auto& g : y.two) {
    if (!g.cls || g.label == label) continue;
    Int d = pair(*y.ambient, *g.cls, v);
    // square -1: reflection c + (c.v)v;  square +1: mirror c - (c.v)v
    Int f = sq == -1 ? d : -d;
    for (size_t i = 0; i < g.cls->coeff.size(); ++i)
      g.cls->coeff[i] = add(g.cls->coeff[i], mul(f, v.coeff[i]));
    if (g.cls->coeff[static_cast<size_t>(gen)] != 0)
      throw Error(ErrorCode::BadArgument, "blowdown left a nonintegral residue");
  }
  y.two.erase(y.two.begin() + vi);
  y.ambient->labels.erase(y.ambient->labels.begin() + gen);
  y.ambient->squares.erase(y.ambient->squares.begin() + gen);
  for (auto& g : y.two)
    if (g.cls) g.cls->coeff.erase(g.cls->coeff.begin() + gen);
  for (auto& g : y.two)
    if (g.cls) g.framing = square(*y.ambient, *g.cls);
  check_framings(y);
  return y;
}

Presentation slide(const Presentation& x, const std::string& moving,
                   const std::string& over, Int sign, std::optional<Int> lk) {
  if (sign != 1 && sign != -1)
    throw Error(ErrorCode::BadArgument, "slide sign must be +1 or -1");
  if (moving == over) throw Error(ErrorCode::SelfSlide, "cannot slide " + moving + " over itself");
  const TwoHandle& hm = x.handle(moving);
  const TwoHandle& ho = x.handle(over);
  if (hm.cls.has_value() != ho.cls.has_value())
    throw Error(ErrorCode::MixedRepresentation,
                "slide needs both handles classed or both classless");
  Presentation y = x;
  TwoHandle& m = y.two[static_cast<size_t>(y.handle_index(moving))];
  const TwoHandle& o = y.two[static_cast<size_t>(y.handle_index(over))];
  if (m.cls) {
    if (lk)
      throw Error(ErrorCode::BadArgument,
                  "lk is only meaningful for classless slides");
    for (size_t i = 0; i < m.cls->coeff.size(); ++i)
      m.cls->coeff[i] = add(m.cls->coeff[i], mul(sign, o.cls->coeff[i]));
    m.framing = square(*y.ambient, *m.cls);
  } else {
    // framing bookkeeping for bare circles: f + f' + 2*sign*lk
    m.framing = add(m.framing, add(o.framing, mul(2, mul(sign, lk.value_or(0)))));
  }
  for (size_t i = 0; i < m.links.size(); ++i)
    m.links[i] = add(m.links[i], mul(sign, o.links[i]));
  check_framings(y);
  return y;
}

Presentation cancel_pair(const Presentation& x, int one_index,
                         const std::string& two_label, const std::string& token) {
  if (one_index < 0 || one_index >= x.one_handles)
    throw Error(ErrorCode::NoSuchOneHandle, "index " + std::to_string(one_index));
  if (token.empty())
    throw Error(ErrorCode::MissingAssumptionToken,
                "cancellation needs a geometric assumption token");
  const TwoHandle& h = x.handle(two_label);
  Int l = h.links[static_cast<size_t>(one_index)];
  if (l != 1 && l != -1)
    throw Error(ErrorCode::NonUnitLinking,
                two_label + " links the 1-handle " + std::to_string(l) + " times");
  for (const auto& g : x.two)
    if (g.label != two_label && g.links[static_cast<size_t>(one_index)] != 0)
      throw Error(ErrorCode::CancelObstructed,
                  g.label + " still links the cancelling 1-handle; slide it off first");
  Presentation y = x;
  y.two.erase(y.two.begin() + y.handle_index(two_label));
  y.one_handles -= 1;
  for (auto& g : y.two) g.links.erase(g.links.begin() + one_index);
  y.assumptions.push_back(token);
  return y;
}

Presentation zero_dot_exchange(const Presentation& x, int one_index,
                               const std::string& new_label,
                               const std::optional<std::string>& once_token) {
  if (one_index < 0 || one_index >= x.one_handles)
    throw Error(ErrorCode::NoSuchOneHandle, "index " + std::to_string(one_index));
  if (x.handle_index(new_label) >= 0 ||
      (x.ambient && x.ambient->has(new_label)))
    throw Error(ErrorCode::LabelClash, new_label + " already in use");
  std::optional<FormLedger> before = effective_ledger(x);
  Presentation y = x;
  y.one_handles -= 1;
  for (auto& g : y.two) g.links.erase(g.links.begin() + one_index);
  TwoHandle nh;
  nh.label = new_label;
  nh.framing = 0;
  nh.links.assign(static_cast<size_t>(y.one_handles), 0);
  y.two.push_back(nh);
  if (once_token && before) {
    // surgery along a circle the 0-framed partner meets once: form gains H
    FormLedger l;
    l.rank = before->rank + 2;
    l.sig = before->sig;
    l.parity = before->parity;
    if (l.rank > 0 && std::llabs(l.sig) < l.rank && (l.rank - l.sig) % 2 == 0 &&
        l.parity == lattice::Parity::Odd)
      l.realized = lattice::classify_indefinite_odd(l.rank, l.sig);
    y.ledger = l;
  } else {
    y.ledger.reset();  // without the geometric token, the bundle type is open
  }
  if (once_token) y.assumptions.push_back(*once_token);
  return y;
}

}  // namespace kirby::handles
