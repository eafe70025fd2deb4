#include "condorcet/los.hpp"

#include "condorcet/errors.hpp"

namespace condorcet::los {

using filters::FiniteUltrafilter;

namespace {

void check_family(const Family& family) {
  if (family.empty()) throw InvalidArgument("an indexed family needs at least one structure");
  if (static_cast<int>(family.size()) > kMaxGround)
    throw InvalidArgument("index sets are limited to " + std::to_string(kMaxGround) + " members");
  for (const auto& st : family)
    if (!(st.signature() == family[0].signature()))
      throw InvalidArgument("structures of a family must share one signature");
}

void check_choices(const Family& family, const Choices& choices) {
  for (const auto& [var, c] : choices) {
    if (c.size() != family.size())
      throw InvalidArgument("choice for '" + var + "' must give one element per index");
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] < 0 || c[i] >= family[i].size())
        throw InvalidArgument("choice for '" + var + "' leaves the universe at index " + std::to_string(i));
  }
}

Environment coordinate(const Choices& choices, std::size_t i) {
  Environment env;
  for (const auto& [var, c] : choices) env[var] = c[i];
  return env;
}

// Visits every element of the product of the universes in lexicographic
// order, index 0 most significant.
template <class F>
void for_each_product(const Family& family, F&& visit) {
  IndexedChoice x(family.size(), 0);
  while (true) {
    visit(x);
    int i = static_cast<int>(family.size()) - 1;
    while (i >= 0 && ++x[i] == family[i].size()) x[i--] = 0;
    if (i < 0) return;
  }
}

std::size_t product_size(const Family& family) {
  std::size_t p = 1;
  for (const auto& st : family) {
    p *= static_cast<std::size_t>(st.size());
    if (p > kMaxProductSize)
      throw ResourceLimit("ultraproduct needs the full product, limited to " + std::to_string(kMaxProductSize) +
                          " elements");
  }
  return p;
}

}  // namespace

Mask truth_set(const Family& family, const Formula& phi, const Choices& choices) {
  check_family(family);
  check_choices(family, choices);
  Mask v = 0;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (eval(family[i], phi, coordinate(choices, i))) v |= bit(static_cast<int>(i));
  return v;
}

bool holds_along(const FiniteUltrafilter& u, const Family& family, const Formula& phi, const Choices& choices) {
  if (u.ground_size() != static_cast<int>(family.size()))
    throw InvalidArgument("ultrafilter and family have different index sets");
  return u.contains(truth_set(family, phi, choices));
}

bool equivalent_mod(const FiniteUltrafilter& u, const IndexedChoice& x, const IndexedChoice& y) {
  if (x.size() != y.size() || static_cast<int>(x.size()) != u.ground_size())
    throw InvalidArgument("choices must be indexed by the ultrafilter's index set");
  Mask agree = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] == y[i]) agree |= bit(static_cast<int>(i));
  return u.contains(agree);
}

int Ultraproduct::class_of(const FiniteUltrafilter& u, const IndexedChoice& x) const {
  for (std::size_t c = 0; c < representatives.size(); ++c)
    if (equivalent_mod(u, representatives[c], x)) return static_cast<int>(c);
  throw InvalidArgument("choice is not an element of the product");
}

Ultraproduct ultraproduct(const Family& family, const FiniteUltrafilter& u) {
  check_family(family);
  if (u.ground_size() != static_cast<int>(family.size()))
    throw InvalidArgument("ultrafilter and family have different index sets");
  product_size(family);

  std::vector<IndexedChoice> reps;
  for_each_product(family, [&](const IndexedChoice& x) {
    for (const auto& r : reps)
      if (equivalent_mod(u, r, x)) return;
    reps.push_back(x);
  });

  const auto& sig = family[0].signature();
  Structure q(static_cast<int>(reps.size()), sig);
  const int classes = static_cast<int>(reps.size());
  for (const auto& [name, arity] : sig.relations) {
    Tuple t(arity, 0);
    while (true) {
      Mask v = 0;
      for (std::size_t i = 0; i < family.size(); ++i) {
        Tuple local;
        for (int c : t) local.push_back(reps[c][i]);
        if (family[i].holds(name, local)) v |= bit(static_cast<int>(i));
      }
      if (u.contains(v)) q.add(name, t);
      int k = arity - 1;
      while (k >= 0 && ++t[k] == classes) t[k--] = 0;
      if (k < 0) break;
    }
  }
  Ultraproduct out{q, reps, {}};
  for (const auto& c : sig.constants) {
    IndexedChoice x;
    for (const auto& st : family) x.push_back(st.constant(c));
    out.quotient.set_constant(c, out.class_of(u, x));
  }
  const int point = u.point();
  for (const auto& r : reps) out.isomorphism.push_back(r[point]);
  return out;
}

namespace {

class LosChecker {
 public:
  LosChecker(const Family& family, const FiniteUltrafilter& u)
      : family_(family), u_(u), up_(ultraproduct(family, u)) {}

  bool node_truth_in_quotient(const Formula& phi, const Choices& choices) {
    Environment env;
    for (const auto& [var, c] : choices) env[var] = up_.class_of(u_, c);
    return eval(up_.quotient, phi, env);
  }

  void check(const Formula& phi, const Choices& choices, LosReport& report) {
    ++report.subformulas_checked;
    if (node_truth_in_quotient(phi, choices) != holds_along(u_, family_, phi, choices)) report.induction_ok = false;
    using K = FormulaNode::Kind;
    switch (phi->kind) {
      case K::Eq:
      case K::Rel: return;
      case K::Not:
      case K::Or:
        for (const auto& c : phi->children) check(c, choices, report);
        return;
      case K::Exists: break;
    }
    ++report.existential_steps;
    const auto& body = phi->children[0];
    const std::string& z = phi->name;
    const Mask w = truth_set(family_, phi, choices);

    // Completed witness: the least witness where one exists, else element 0.
    IndexedChoice witness(family_.size(), 0);
    for (std::size_t i = 0; i < family_.size(); ++i) {
      Environment env = coordinate(choices, i);
      for (int e = 0; e < family_[i].size(); ++e) {
        env[z] = e;
        if (eval(family_[i], body, env)) {
          witness[i] = e;
          break;
        }
      }
    }
    Choices with = choices;
    with[z] = witness;
    if (!is_subset(w, truth_set(family_, body, with))) report.induction_ok = false;

    for_each_product(family_, [&](const IndexedChoice& c) {
      Choices other = choices;
      other[z] = c;
      if (!is_subset(truth_set(family_, body, other), w)) report.induction_ok = false;
    });
    check(body, with, report);
  }

 private:
  const Family& family_;
  const FiniteUltrafilter& u_;
  Ultraproduct up_;
};

}  // namespace

LosReport los_verify(const Family& family, const FiniteUltrafilter& u, const Formula& phi, const Choices& choices) {
  LosChecker checker(family, u);
  LosReport r;
  r.lhs = checker.node_truth_in_quotient(phi, choices);
  r.rhs = holds_along(u, family, phi, choices);
  r.agree = r.lhs == r.rhs;
  r.induction_ok = true;
  checker.check(phi, choices, r);
  return r;
}

namespace {

int below(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

Formula random_formula(std::mt19937_64& rng, int height, std::vector<std::string> scope) {
  auto pick_var = [&]() { return Term::var(scope[below(rng, static_cast<int>(scope.size()))]); };
  if (height == 0 || below(rng, 4) == 0) {
    switch (below(rng, 3)) {
      case 0: return make_eq(pick_var(), pick_var());
      case 1: return make_rel("P", {pick_var()});
      default: return make_rel("R", {pick_var(), pick_var()});
    }
  }
  switch (below(rng, 3)) {
    case 0: return make_not(random_formula(rng, height - 1, scope));
    case 1: return make_or(random_formula(rng, height - 1, scope), random_formula(rng, height - 1, scope));
    default: {
      static const char* names[] = {"z", "w", "x", "y"};
      std::string v = names[below(rng, 4)];
      scope.push_back(v);
      return make_exists(v, random_formula(rng, height - 1, scope));
    }
  }
}

Structure random_structure(std::mt19937_64& rng, int size) {
  Signature sig;
  sig.relations = {{"P", 1}, {"R", 2}};
  Structure st(size, sig);
  for (int a = 0; a < size; ++a) {
    if (rng() & 1) st.add("P", {a});
    for (int b = 0; b < size; ++b)
      if (rng() & 1) st.add("R", {a, b});
  }
  return st;
}

}  // namespace

LosInstance random_los_instance(std::mt19937_64& rng, int max_index, int max_universe, int max_height) {
  const int n = 1 + below(rng, max_index);
  Family family;
  for (int i = 0; i < n; ++i) family.push_back(random_structure(rng, 1 + below(rng, max_universe)));
  auto u = filters::principal(n, below(rng, n));
  auto phi = random_formula(rng, max_height, {"x", "y"});
  Choices choices;
  for (const char* v : {"x", "y"}) {
    IndexedChoice c;
    for (int i = 0; i < n; ++i) c.push_back(below(rng, family[i].size()));
    choices[v] = c;
  }
  return LosInstance{std::move(family), std::move(u), std::move(phi), std::move(choices)};
}

LosSuiteResult run_los_suite(std::uint64_t seed, int instances) {
  std::mt19937_64 rng(seed);
  LosSuiteResult out;
  for (int k = 0; k < instances; ++k) {
    auto inst = random_los_instance(rng, 3, 3, 5);
    auto r = los_verify(inst.family, inst.ultra, inst.formula, inst.choices);
    ++out.instances;
    out.agreements += r.agree && r.induction_ok;

    // Transfer: close the formula into a sentence and use a constant family.
    Formula sentence = inst.formula;
    for (const char* v : {"x", "y"})
      sentence = (rng() & 1) ? make_exists(v, sentence) : make_forall(v, sentence);
    Family constant(inst.family.size(), inst.family[0]);
    const bool factor = eval(inst.family[0], sentence);
    const bool along = holds_along(inst.ultra, constant, sentence, {});
    auto up = ultraproduct(constant, inst.ultra);
    ++out.transfer_checks;
    out.transfer_agreements += factor == along && along == eval(up.quotient, sentence);
  }
  return out;
}

}  // namespace condorcet::los
