//===-- solver.cpp --------------------------------------------------------------===//

#include "smartgen/solver.hpp"

#include <algorithm>
#include <cassert>

namespace smartgen {

Domain fullDomain(VType t) {
  if (t.isSigned) {
    int64_t hi = (1ll << (t.width - 1)) - 1;
    return Domain{-hi - 1, hi};
  }
  return Domain{0, (1ll << t.width) - 1};
}

namespace {

struct Ival {
  int64_t lo = 0;
  int64_t hi = 0;
  bool exact = false; // value always equals the int64 arithmetic (no wrap)

  bool contains(int64_t v) const { return lo <= v && v <= hi; }
  bool singleton() const { return lo == hi; }
};

int64_t floorDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
int64_t ceilDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

Ival repRange(VType t) {
  Domain d = fullDomain(t);
  return Ival{d.lo, d.hi, true};
}

bool fitsType(int64_t lo, int64_t hi, VType t) {
  Domain d = fullDomain(t);
  return lo >= d.lo && hi <= d.hi;
}

enum class Truth { True, False, Maybe };

class Engine {
public:
  Engine(const std::vector<SymRef>& conjuncts, const DomainMap& domains,
         uint64_t budgetSteps)
      : conjuncts_(conjuncts), budget_(budgetSteps) {
    std::map<std::string, VType> inputs;
    for (const auto& c : conjuncts) sym::collectInputs(c, inputs);
    // order variables by first appearance
    for (const auto& c : conjuncts) appearanceOrder(c, inputs);
    for (const auto& [name, vt] : inputs)
      if (!index_.count(name)) pushVar(name, vt); // symbols seen only via map order
    for (auto& [name, dom] : varDomains_) {
      auto it = domains.find(name);
      if (it != domains.end()) {
        dom.lo = std::max(dom.lo, it->second.lo);
        dom.hi = std::min(dom.hi, it->second.hi);
      }
    }
  }

  SolveResult run() {
    SolveResult out;
    // constant-only conjuncts decide immediately
    for (size_t i = 0; i < conjuncts_.size(); ++i) {
      std::map<std::string, VType> ins;
      sym::collectInputs(conjuncts_[i], ins);
      if (!ins.empty()) continue;
      auto t = sym::evalTruth(conjuncts_[i], Model{});
      if (!t || !*t) {
        out.verdict = SolveResult::Verdict::Unsat;
        out.coreHint = i;
        return out;
      }
    }

    std::vector<Ival> state;
    state.reserve(vars_.size());
    for (const auto& name : vars_) {
      const Domain& d = varDomains_.at(name);
      if (d.lo > d.hi) {
        out.verdict = SolveResult::Verdict::Unsat;
        return out;
      }
      state.push_back(Ival{d.lo, d.hi, true});
    }

    int firstConflict = -1;
    if (!propagate(state, &firstConflict)) {
      out.verdict = SolveResult::Verdict::Unsat;
      if (firstConflict >= 0) out.coreHint = static_cast<size_t>(firstConflict);
      return out;
    }

    if (hasNonlinear()) {
      // remaining domain product small enough -> exhaustive, else Unknown
      unsigned __int128 product = 1;
      for (const auto& iv : state) {
        product *= static_cast<unsigned __int128>(iv.hi - iv.lo + 1);
        if (product > (1u << 12)) {
          out.verdict = SolveResult::Verdict::Unknown;
          out.reason = "nonlinear";
          return out;
        }
      }
      return enumerate(state);
    }

    return search(state);
  }

private:
  const std::vector<SymRef>& conjuncts_;
  uint64_t budget_;
  uint64_t steps_ = 0;
  std::vector<std::string> vars_;
  std::map<std::string, VType> varTypes_;
  std::map<std::string, Domain> varDomains_;
  std::map<std::string, size_t> index_;

  void pushVar(const std::string& name, VType vt) {
    index_[name] = vars_.size();
    vars_.push_back(name);
    varTypes_[name] = vt;
    varDomains_[name] = fullDomain(vt);
  }
  void appearanceOrder(const SymRef& e, const std::map<std::string, VType>& all) {
    if (!e) return;
    if (e->op == SymOp::Input) {
      if (!index_.count(e->name)) pushVar(e->name, all.at(e->name));
      return;
    }
    appearanceOrder(e->a, all);
    appearanceOrder(e->b, all);
  }

  bool budgetLeft() { return ++steps_ <= budget_; }

  bool hasNonlinear() const {
    for (const auto& c : conjuncts_)
      if (nonlinearNode(c)) return true;
    return false;
  }
  static bool nonlinearNode(const SymRef& e) {
    if (!e) return false;
    bool self = false;
    switch (e->op) {
    case SymOp::Mul:
      self = e->a->op != SymOp::Const && e->b->op != SymOp::Const;
      break;
    case SymOp::Div:
    case SymOp::Mod:
      self = e->b->op != SymOp::Const;
      break;
    default:
      break;
    }
    return self || nonlinearNode(e->a) || nonlinearNode(e->b);
  }

  //===--------------------------------------------------------------------===//
  // forward interval analysis (sound bounds; exact == invertible, no wrap)
  //===--------------------------------------------------------------------===//

  Ival forward(const SymRef& e, const std::vector<Ival>& state) {
    VType t = e->type;
    switch (e->op) {
    case SymOp::Const: {
      int64_t v = sym::interpret(e->bits, t);
      return Ival{v, v, true};
    }
    case SymOp::Input: {
      const Ival& iv = state[index_.at(e->name)];
      return Ival{iv.lo, iv.hi, true};
    }
    case SymOp::Cast: {
      Ival a = forward(e->a, state);
      if (a.exact && fitsType(a.lo, a.hi, t)) return Ival{a.lo, a.hi, true};
      return repRange(t);
    }
    case SymOp::Add: {
      Ival a = forward(e->a, state), b = forward(e->b, state);
      int64_t lo = a.lo + b.lo, hi = a.hi + b.hi;
      if (a.exact && b.exact && fitsType(lo, hi, t)) return Ival{lo, hi, true};
      return repRange(t);
    }
    case SymOp::Sub: {
      Ival a = forward(e->a, state), b = forward(e->b, state);
      int64_t lo = a.lo - b.hi, hi = a.hi - b.lo;
      if (a.exact && b.exact && fitsType(lo, hi, t)) return Ival{lo, hi, true};
      return repRange(t);
    }
    case SymOp::Mul: {
      Ival a = forward(e->a, state), b = forward(e->b, state);
      if (b.singleton() || a.singleton()) {
        int64_t c = b.singleton() ? b.lo : a.lo;
        const Ival& v = b.singleton() ? a : b;
        if (c == 0) return Ival{0, 0, true};
        int64_t x = v.lo * c, y = v.hi * c;
        int64_t lo = std::min(x, y), hi = std::max(x, y);
        // v bounded by +-2^32 and 32-bit c could overflow int64; only claim
        // the interval when the multiplication stays in safe range
        if (a.exact && b.exact &&
            std::abs(c) < (1ll << 31) && std::max(std::abs(v.lo), std::abs(v.hi)) < (1ll << 31) &&
            fitsType(lo, hi, t))
          return Ival{lo, hi, true};
      }
      return repRange(t);
    }
    case SymOp::Div: {
      Ival a = forward(e->a, state), b = forward(e->b, state);
      if (b.singleton() && b.lo != 0 && a.exact && b.exact) {
        int64_t c = b.lo;
        // smin / -1 wraps; everything else is monotone truncation
        Domain d = fullDomain(t);
        if (!(c == -1 && a.contains(d.lo))) {
          int64_t x = a.lo / c, y = a.hi / c;
          return Ival{std::min(x, y), std::max(x, y), false};
        }
      }
      return repRange(t);
    }
    case SymOp::Mod: {
      Ival b = forward(e->b, state);
      if (b.singleton() && b.lo != 0 && b.exact) {
        int64_t m = std::abs(b.lo) - 1;
        Ival a = forward(e->a, state);
        int64_t lo = a.lo >= 0 ? 0 : -m;
        int64_t hi = a.hi <= 0 ? 0 : m;
        if (a.exact) return Ival{lo, hi, false};
        return Ival{-m, m, false};
      }
      return repRange(t);
    }
    case SymOp::Neg: {
      Ival a = forward(e->a, state);
      if (a.exact && fitsType(-a.hi, -a.lo, t)) return Ival{-a.hi, -a.lo, true};
      return repRange(t);
    }
    case SymOp::BitNot: {
      Ival a = forward(e->a, state);
      if (a.exact && fitsType(-a.hi - 1, -a.lo - 1, t))
        return Ival{-a.hi - 1, -a.lo - 1, true};
      return repRange(t);
    }
    case SymOp::Not: {
      Truth tr = forwardTruth(e->a, state);
      if (tr == Truth::True) return Ival{0, 0, false};
      if (tr == Truth::False) return Ival{1, 1, false};
      return Ival{0, 1, false};
    }
    case SymOp::LogAnd: {
      Truth a = forwardTruth(e->a, state), b = forwardTruth(e->b, state);
      if (a == Truth::False || b == Truth::False) return Ival{0, 0, false};
      if (a == Truth::True && b == Truth::True) return Ival{1, 1, false};
      return Ival{0, 1, false};
    }
    case SymOp::LogOr: {
      Truth a = forwardTruth(e->a, state), b = forwardTruth(e->b, state);
      if (a == Truth::True || b == Truth::True) return Ival{1, 1, false};
      if (a == Truth::False && b == Truth::False) return Ival{0, 0, false};
      return Ival{0, 1, false};
    }
    case SymOp::Lt:
    case SymOp::Le:
    case SymOp::Eq:
    case SymOp::Ne: {
      Ival a = forward(e->a, state), b = forward(e->b, state);
      Truth tr = compareTruth(e->op, a, b);
      if (tr == Truth::True) return Ival{1, 1, false};
      if (tr == Truth::False) return Ival{0, 0, false};
      return Ival{0, 1, false};
    }
    case SymOp::Shl:
    case SymOp::Shr: {
      Ival b = forward(e->b, state);
      if (b.singleton() && b.exact && b.lo >= 0 && b.lo < t.width) {
        Ival a = forward(e->a, state);
        int64_t c = b.lo;
        if (e->op == SymOp::Shr && a.exact) {
          int64_t x = a.lo >> c, y = a.hi >> c;
          return Ival{std::min(x, y), std::max(x, y), false};
        }
        if (e->op == SymOp::Shl && a.exact) {
          if (std::max(std::abs(a.lo), std::abs(a.hi)) < (1ll << 31)) {
            int64_t x = a.lo << c, y = a.hi << c;
            if (fitsType(std::min(x, y), std::max(x, y), t))
              return Ival{std::min(x, y), std::max(x, y), false};
          }
        }
      }
      return repRange(t);
    }
    case SymOp::BitAnd: {
      Ival a = forward(e->a, state), b = forward(e->b, state);
      if (a.lo >= 0 && b.lo >= 0)
        return Ival{0, std::min(a.hi, b.hi), false};
      return repRange(t);
    }
    case SymOp::BitOr:
      return repRange(t);
    }
    return repRange(t);
  }

  Truth forwardTruth(const SymRef& e, const std::vector<Ival>& state) {
    Ival iv = forward(e, state);
    if (iv.lo == 0 && iv.hi == 0) return Truth::False;
    if (!iv.contains(0)) return Truth::True;
    return Truth::Maybe;
  }

  static Truth compareTruth(SymOp op, const Ival& a, const Ival& b) {
    switch (op) {
    case SymOp::Lt:
      if (a.hi < b.lo) return Truth::True;
      if (a.lo >= b.hi) return Truth::False;
      return Truth::Maybe;
    case SymOp::Le:
      if (a.hi <= b.lo) return Truth::True;
      if (a.lo > b.hi) return Truth::False;
      return Truth::Maybe;
    case SymOp::Eq:
      if (a.singleton() && b.singleton() && a.lo == b.lo) return Truth::True;
      if (a.hi < b.lo || b.hi < a.lo) return Truth::False;
      return Truth::Maybe;
    case SymOp::Ne:
      if (a.singleton() && b.singleton() && a.lo == b.lo) return Truth::False;
      if (a.hi < b.lo || b.hi < a.lo) return Truth::True;
      return Truth::Maybe;
    default:
      return Truth::Maybe;
    }
  }

  //===--------------------------------------------------------------------===//
  // backward narrowing (sound: only excludes impossible values)
  //===--------------------------------------------------------------------===//

  // returns false on a proven conflict; sets *changed when any domain shrank
  bool narrowInterval(const SymRef& e, int64_t lo, int64_t hi,
                      std::vector<Ival>& state, bool* changed) {
    if (lo > hi) return false;
    switch (e->op) {
    case SymOp::Const: {
      int64_t v = sym::interpret(e->bits, e->type);
      return v >= lo && v <= hi;
    }
    case SymOp::Input: {
      Ival& iv = state[index_.at(e->name)];
      int64_t nlo = std::max(iv.lo, lo), nhi = std::min(iv.hi, hi);
      if (nlo > nhi) return false;
      if (nlo != iv.lo || nhi != iv.hi) {
        iv.lo = nlo;
        iv.hi = nhi;
        *changed = true;
      }
      return true;
    }
    case SymOp::Cast: {
      Ival a = forward(e->a, state);
      if (a.exact && fitsType(a.lo, a.hi, e->type))
        return narrowInterval(e->a, lo, hi, state, changed);
      return true;
    }
    case SymOp::Add: {
      Ival a = forward(e->a, state), b = forward(e->b, state);
      if (!(a.exact && b.exact && fitsType(a.lo + b.lo, a.hi + b.hi, e->type)))
        return true;
      if (!narrowInterval(e->a, lo - b.hi, hi - b.lo, state, changed)) return false;
      return narrowInterval(e->b, lo - a.hi, hi - a.lo, state, changed);
    }
    case SymOp::Sub: {
      Ival a = forward(e->a, state), b = forward(e->b, state);
      if (!(a.exact && b.exact && fitsType(a.lo - b.hi, a.hi - b.lo, e->type)))
        return true;
      if (!narrowInterval(e->a, lo + b.lo, hi + b.hi, state, changed)) return false;
      return narrowInterval(e->b, a.lo - hi, a.hi - lo, state, changed);
    }
    case SymOp::Neg: {
      Ival a = forward(e->a, state);
      if (!(a.exact && fitsType(-a.hi, -a.lo, e->type))) return true;
      return narrowInterval(e->a, -hi, -lo, state, changed);
    }
    case SymOp::Mul: {
      Ival a = forward(e->a, state), b = forward(e->b, state);
      const bool bConst = b.singleton() && b.exact;
      const bool aConst = a.singleton() && a.exact;
      if (!bConst && !aConst) return true;
      int64_t c = bConst ? b.lo : a.lo;
      const SymRef& v = bConst ? e->a : e->b;
      Ival vi = bConst ? a : b;
      if (c == 0) return lo <= 0 && 0 <= hi;
      if (!(vi.exact && std::abs(c) < (1ll << 31) &&
            std::max(std::abs(vi.lo), std::abs(vi.hi)) < (1ll << 31)))
        return true;
      int64_t x = vi.lo * c, y = vi.hi * c;
      if (!fitsType(std::min(x, y), std::max(x, y), e->type)) return true;
      if (c > 0)
        return narrowInterval(v, ceilDiv(lo, c), floorDiv(hi, c), state, changed);
      return narrowInterval(v, ceilDiv(hi, c), floorDiv(lo, c), state, changed);
    }
    default:
      return true; // no narrowing rule; bounds search handles it
    }
  }

  bool narrowNotEqual(const SymRef& e, int64_t v, std::vector<Ival>& state,
                      bool* changed) {
    if (e->op != SymOp::Input) return true;
    Ival& iv = state[index_.at(e->name)];
    if (iv.singleton() && iv.lo == v) return false;
    if (iv.lo == v) {
      ++iv.lo;
      *changed = true;
    } else if (iv.hi == v) {
      --iv.hi;
      *changed = true;
    }
    return true;
  }

  bool narrowCompare(SymOp op, const SymRef& a, const SymRef& b,
                     std::vector<Ival>& state, bool* changed) {
    Ival ia = forward(a, state), ib = forward(b, state);
    switch (op) {
    case SymOp::Lt:
      if (!narrowInterval(a, ia.lo, ib.hi - 1, state, changed)) return false;
      return narrowInterval(b, ia.lo + 1, ib.hi, state, changed);
    case SymOp::Le:
      if (!narrowInterval(a, ia.lo, ib.hi, state, changed)) return false;
      return narrowInterval(b, ia.lo, ib.hi, state, changed);
    case SymOp::Eq: {
      int64_t lo = std::max(ia.lo, ib.lo), hi = std::min(ia.hi, ib.hi);
      if (!narrowInterval(a, lo, hi, state, changed)) return false;
      return narrowInterval(b, lo, hi, state, changed);
    }
    case SymOp::Ne: {
      if (ib.singleton() && !narrowNotEqual(a, ib.lo, state, changed))
        return false;
      if (ia.singleton() && !narrowNotEqual(b, ia.lo, state, changed))
        return false;
      return true;
    }
    default:
      return true;
    }
  }

  bool narrowTruth(const SymRef& e, bool required, std::vector<Ival>& state,
                   bool* changed) {
    switch (e->op) {
    case SymOp::LogAnd:
      if (required) {
        if (!narrowTruth(e->a, true, state, changed)) return false;
        return narrowTruth(e->b, true, state, changed);
      } else {
        if (forwardTruth(e->a, state) == Truth::True)
          return narrowTruth(e->b, false, state, changed);
        if (forwardTruth(e->b, state) == Truth::True)
          return narrowTruth(e->a, false, state, changed);
        return true;
      }
    case SymOp::LogOr:
      if (required) {
        if (forwardTruth(e->a, state) == Truth::False)
          return narrowTruth(e->b, true, state, changed);
        if (forwardTruth(e->b, state) == Truth::False)
          return narrowTruth(e->a, true, state, changed);
        return true;
      } else {
        if (!narrowTruth(e->a, false, state, changed)) return false;
        return narrowTruth(e->b, false, state, changed);
      }
    case SymOp::Not:
      return narrowTruth(e->a, !required, state, changed);
    case SymOp::Lt:
      return required ? narrowCompare(SymOp::Lt, e->a, e->b, state, changed)
                      : narrowCompare(SymOp::Le, e->b, e->a, state, changed);
    case SymOp::Le:
      return required ? narrowCompare(SymOp::Le, e->a, e->b, state, changed)
                      : narrowCompare(SymOp::Lt, e->b, e->a, state, changed);
    case SymOp::Eq:
      return narrowCompare(required ? SymOp::Eq : SymOp::Ne, e->a, e->b, state,
                           changed);
    case SymOp::Ne:
      return narrowCompare(required ? SymOp::Ne : SymOp::Eq, e->a, e->b, state,
                           changed);
    default:
      // arithmetic truthiness: != 0 (endpoint shaving) or == 0
      if (required) {
        if (e->op == SymOp::Input) {
          bool ok = narrowNotEqual(e, 0, state, changed);
          return ok;
        }
        Ival iv = forward(e, state);
        return !(iv.lo == 0 && iv.hi == 0);
      }
      return narrowInterval(e, 0, 0, state, changed);
    }
  }

  // fixpoint over all conjuncts; false on conflict
  bool propagate(std::vector<Ival>& state, int* firstConflict) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < conjuncts_.size(); ++i) {
        if (!budgetLeft()) return true; // out of steps: stop narrowing, stay sound
        if (!narrowTruth(conjuncts_[i], true, state, &changed)) {
          if (firstConflict) *firstConflict = static_cast<int>(i);
          return false;
        }
      }
    }
    return true;
  }

  //===--------------------------------------------------------------------===//
  // search
  //===--------------------------------------------------------------------===//

  SolveResult satFrom(const std::vector<Ival>& state) {
    SolveResult out;
    Model model;
    for (size_t i = 0; i < vars_.size(); ++i)
      model[vars_[i]] = sym::maskToWidth(
          static_cast<uint64_t>(state[i].lo), varTypes_[vars_[i]].width);
    // internal soundness check: the model must evaluate every conjunct true
    for (const auto& c : conjuncts_) {
      auto t = sym::evalTruth(c, model);
      if (!t || !*t) {
        out.verdict = SolveResult::Verdict::Unknown;
        out.reason = "internal-model-check";
        return out;
      }
    }
    out.verdict = SolveResult::Verdict::Sat;
    out.model = std::move(model);
    return out;
  }

  bool allSatisfied(const Model& model) {
    for (const auto& c : conjuncts_) {
      auto t = sym::evalTruth(c, model);
      if (!t || !*t) return false;
    }
    return true;
  }

  SolveResult search(std::vector<Ival>& root) {
    struct Frame {
      std::vector<Ival> state;
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{root});

    while (!stack.empty()) {
      if (!budgetLeft()) {
        SolveResult out;
        out.verdict = SolveResult::Verdict::Unknown;
        out.reason = "budget";
        return out;
      }
      Frame frame = std::move(stack.back());
      stack.pop_back();

      if (!propagate(frame.state, nullptr)) continue;

      size_t split = vars_.size();
      for (size_t i = 0; i < vars_.size(); ++i) {
        if (!frame.state[i].singleton()) {
          split = i;
          break;
        }
      }
      if (split == vars_.size()) {
        Model model;
        for (size_t i = 0; i < vars_.size(); ++i)
          model[vars_[i]] = sym::maskToWidth(
              static_cast<uint64_t>(frame.state[i].lo), varTypes_[vars_[i]].width);
        if (allSatisfied(model)) return satFrom(frame.state);
        continue;
      }

      Ival iv = frame.state[split];
      int64_t mid = iv.lo + (iv.hi - iv.lo) / 2;
      Frame upper{frame.state};
      upper.state[split] = Ival{mid + 1, iv.hi, true};
      Frame lower{std::move(frame.state)};
      lower.state[split] = Ival{iv.lo, mid, true};
      stack.push_back(std::move(upper)); // explored after the lower half
      stack.push_back(std::move(lower));
    }

    SolveResult out;
    out.verdict = SolveResult::Verdict::Unsat;
    return out;
  }

  SolveResult enumerate(const std::vector<Ival>& state) {
    Model model;
    SolveResult out;
    if (enumerateFrom(0, state, model, out)) return out;
    if (steps_ > budget_) {
      out.verdict = SolveResult::Verdict::Unknown;
      out.reason = "budget";
      return out;
    }
    out.verdict = SolveResult::Verdict::Unsat;
    return out;
  }

  bool enumerateFrom(size_t varIdx, const std::vector<Ival>& state, Model& model,
                     SolveResult& out) {
    if (varIdx == vars_.size()) {
      if (allSatisfied(model)) {
        out.verdict = SolveResult::Verdict::Sat;
        out.model = model;
        return true;
      }
      return false;
    }
    const Ival& iv = state[varIdx];
    for (int64_t v = iv.lo; v <= iv.hi; ++v) {
      if (!budgetLeft()) return false;
      model[vars_[varIdx]] = sym::maskToWidth(static_cast<uint64_t>(v),
                                              varTypes_[vars_[varIdx]].width);
      if (enumerateFrom(varIdx + 1, state, model, out)) return true;
    }
    model.erase(vars_[varIdx]);
    return false;
  }
};

} // namespace

SolveResult Solver::solve(const std::vector<SymRef>& conjuncts,
                          const DomainMap& domains, uint64_t budgetMs) const {
  ++solveCalls;
  Engine engine(conjuncts, domains, budgetMs * kStepsPerMs);
  return engine.run();
}

Solver::BoundResult Solver::bound(const std::vector<SymRef>& conjuncts,
                                  const DomainMap& domains,
                                  const std::string& symbol, bool maximize,
                                  uint64_t budgetMs,
                                  const SolveFn& probeFn) const {
  BoundResult out;

  // the symbol's search bracket: its declared domain
  std::map<std::string, VType> inputs;
  for (const auto& c : conjuncts) sym::collectInputs(c, inputs);
  auto typeIt = inputs.find(symbol);
  if (typeIt == inputs.end()) {
    out.unknownReason = "symbol not constrained";
    return out;
  }
  Domain bracket = fullDomain(typeIt->second);
  auto domIt = domains.find(symbol);
  if (domIt != domains.end()) {
    bracket.lo = std::max(bracket.lo, domIt->second.lo);
    bracket.hi = std::min(bracket.hi, domIt->second.hi);
  }

  auto probe = [&](int64_t lo, int64_t hi) {
    DomainMap restricted = domains;
    restricted[symbol] = Domain{lo, hi};
    if (probeFn) return probeFn(conjuncts, restricted, budgetMs);
    return solve(conjuncts, restricted, budgetMs);
  };

  int64_t lo = bracket.lo, hi = bracket.hi;
  SolveResult whole = probe(lo, hi);
  if (whole.unknown()) {
    out.unknownReason = whole.reason;
    return out;
  }
  if (whole.unsat()) {
    out.unknownReason = "unsat";
    return out;
  }

  while (lo < hi) {
    int64_t mid = lo + (hi - lo) / 2; // lower-biased midpoint
    SolveResult r = maximize ? probe(mid + 1, hi) : probe(lo, mid);
    if (r.unknown()) {
      out.unknownReason = r.reason;
      return out;
    }
    if (r.sat()) {
      if (maximize)
        lo = mid + 1;
      else
        hi = mid;
    } else {
      if (maximize)
        hi = mid;
      else
        lo = mid + 1;
    }
  }

  // fetch a witness pinned at the converged value (earlier probes may have
  // answered Sat with the symbol elsewhere inside their bracket)
  SolveResult pinned = probe(lo, lo);
  if (!pinned.sat()) {
    out.unknownReason = pinned.unknown() ? pinned.reason : "probe-inconsistent";
    return out;
  }
  out.value = lo;
  out.model = std::move(pinned.model);
  return out;
}

} // namespace smartgen
