#include "ucov/groups.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "ucov/errors.hpp"

namespace ucov {

namespace {

// Smallest subset containing `seeds` and the identity and closed under the
// table operation. Sound for Light's associativity test, which only needs
// *some* generating set.
std::vector<char> tableClosure(const std::vector<std::vector<int>>& table,
                               int identity, const std::vector<int>& seeds) {
  int n = static_cast<int>(table.size());
  std::vector<char> in(n, 0);
  std::vector<int> members;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  add(identity);
  for (int s : seeds) add(s);
  for (std::size_t next = 0; next < members.size(); ++next) {
    int x = members[next];
    for (std::size_t j = 0; j <= next; ++j) {
      int y = members[j];
      add(table[x][y]);
      add(table[y][x]);
    }
  }
  return in;
}

bool sameGroup(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->order() != b->order()) return false;
  for (int i = 0; i < a->order(); ++i)
    for (int j = 0; j < a->order(); ++j)
      if (a->multiply(i, j) != b->multiply(i, j)) return false;
  return true;
}

}  // namespace

// ---- FiniteGroup ----

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> elementNames,
                         std::vector<std::vector<int>> table)
    : name_(std::move(name)), names_(std::move(elementNames)),
      table_(std::move(table)) {
  int n = static_cast<int>(table_.size());
  if (n < 1) throw PreconditionError("group: empty multiplication table");
  if (n > kMaxOrder)
    throw PreconditionError("group: order " + std::to_string(n) +
                            " exceeds the exhaustive-verification cap");
  if (names_.empty())
    for (int i = 0; i < n; ++i) names_.push_back("g" + std::to_string(i));
  if (static_cast<int>(names_.size()) != n)
    throw PreconditionError("group: element name count mismatch");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n)
      throw PreconditionError("group: table is not square");
    for (int v : row)
      if (v < 0 || v >= n)
        throw PreconditionError("group: table entry out of range");
  }
  // identity
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw PreconditionError("group: no two-sided identity");
  // inverses
  inverses_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) {
        inverses_[a] = b;
        break;
      }
    if (inverses_[a] < 0)
      throw PreconditionError("group: element " + std::to_string(a) +
                              " has no two-sided inverse");
  }
  // associativity: all triples for small tables, Light's test above that
  // (a(gb) = (ag)b for all a, b and generators g suffices).
  if (n <= 256) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table_[a][table_[b][c]] != table_[table_[a][b]][c])
            throw PreconditionError("group: multiplication is not associative");
  } else {
    std::vector<int> generators;
    std::vector<char> closed = tableClosure(table_, identity_, generators);
    for (int u = 0; u < n; ++u) {
      if (closed[u]) continue;
      generators.push_back(u);
      closed = tableClosure(table_, identity_, generators);
    }
    for (int g : generators)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (table_[a][table_[g][b]] != table_[table_[a][g]][b])
            throw PreconditionError("group: multiplication is not associative");
  }
}

GroupPtr FiniteGroup::make(std::string name, std::vector<std::string> elementNames,
                           std::vector<std::vector<int>> table) {
  return std::make_shared<const FiniteGroup>(std::move(name),
                                             std::move(elementNames),
                                             std::move(table));
}

GroupPtr FiniteGroup::cyclic(int n) {
  if (n < 1 || n > kMaxOrder)
    throw PreconditionError("cyclic: order out of range");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names;
  names.reserve(n);
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return make("C" + std::to_string(n), std::move(names), std::move(table));
}

GroupPtr FiniteGroup::trivial() { return cyclic(1); }

GroupPtr FiniteGroup::fromPermutations(
    int degree, const std::vector<std::vector<int>>& generators) {
  if (degree < 1) throw PreconditionError("fromPermutations: degree must be positive");
  auto checkPerm = [&](const std::vector<int>& p) {
    if (static_cast<int>(p.size()) != degree)
      throw PreconditionError("fromPermutations: generator has wrong degree");
    std::vector<char> seen(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v])
        throw PreconditionError("fromPermutations: generator is not a permutation");
      seen[v] = 1;
    }
  };
  for (const auto& g : generators) checkPerm(g);
  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(degree);
    for (int i = 0; i < degree; ++i) r[i] = a[b[i]];  // apply b first
    return r;
  };
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::vector<std::vector<int>> elements{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t next = 0; next < elements.size(); ++next) {
    for (const auto& g : generators) {
      std::vector<int> p = compose(elements[next], g);
      if (index.emplace(p, static_cast<int>(elements.size())).second) {
        elements.push_back(std::move(p));
        if (static_cast<int>(elements.size()) > kMaxOrder)
          throw PreconditionError(
              "fromPermutations: generated group exceeds the order cap");
      }
    }
  }
  int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table[a][b] = index.at(compose(elements[a], elements[b]));
  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& p : elements) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < degree; ++i) os << (i ? " " : "") << p[i];
    os << "]";
    names.push_back(os.str());
  }
  return make("perm(deg=" + std::to_string(degree) +
                  ",ord=" + std::to_string(n) + ")",
              std::move(names), std::move(table));
}

GroupPtr FiniteGroup::directProduct(const GroupPtr& a, const GroupPtr& b) {
  if (!a || !b) throw PreconditionError("directProduct: null factor");
  long long order = static_cast<long long>(a->order()) * b->order();
  if (order > kMaxOrder)
    throw PreconditionError("directProduct: order exceeds the cap");
  int n = static_cast<int>(order);
  int nb = b->order();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) {
    names.push_back("(" + a->elementName(i / nb) + "," + b->elementName(i % nb) + ")");
    for (int j = 0; j < n; ++j)
      table[i][j] = a->multiply(i / nb, j / nb) * nb + b->multiply(i % nb, j % nb);
  }
  return make(a->name() + " x " + b->name(), std::move(names), std::move(table));
}

bool FiniteGroup::isAbelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = a + 1; b < order(); ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

// ---- GroupHom ----

GroupHom::GroupHom(GroupPtr domain, GroupPtr codomain, std::vector<int> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)),
      images_(std::move(images)) {
  if (!domain_ || !codomain_) throw PreconditionError("hom: null group");
  if (static_cast<int>(images_.size()) != domain_->order())
    throw PreconditionError("hom: image count mismatch");
  for (int v : images_)
    if (v < 0 || v >= codomain_->order())
      throw PreconditionError("hom: image out of range");
  for (int a = 0; a < domain_->order(); ++a)
    for (int b = 0; b < domain_->order(); ++b)
      if (images_[domain_->multiply(a, b)] !=
          codomain_->multiply(images_[a], images_[b]))
        throw PreconditionError("hom: f(ab) != f(a) f(b) at a=" +
                                std::to_string(a) + ", b=" + std::to_string(b));
}

GroupHom GroupHom::identity(const GroupPtr& g) {
  std::vector<int> images(g->order());
  for (int i = 0; i < g->order(); ++i) images[i] = i;
  return GroupHom(g, g, std::move(images));
}

bool GroupHom::isInjective() const {
  std::vector<char> seen(codomain_->order(), 0);
  for (int v : images_) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool GroupHom::isSurjective() const {
  std::vector<char> seen(codomain_->order(), 0);
  int hit = 0;
  for (int v : images_)
    if (!seen[v]) {
      seen[v] = 1;
      ++hit;
    }
  return hit == codomain_->order();
}

std::vector<int> GroupHom::kernel() const {
  std::vector<int> k;
  for (int a = 0; a < domain_->order(); ++a)
    if (images_[a] == codomain_->identity()) k.push_back(a);
  return k;
}

GroupHom GroupHom::composeWith(const GroupHom& inner) const {
  if (!sameGroup(inner.codomain_, domain_))
    throw PreconditionError("compose: codomain of inner map differs from domain");
  std::vector<int> images;
  images.reserve(inner.images_.size());
  for (int v : inner.images_) images.push_back(images_[v]);
  return GroupHom(inner.domain_, codomain_, std::move(images));
}

// ---- ShortExactSequence ----

ShortExactSequence::ShortExactSequence(GroupHom alpha, GroupHom beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (!sameGroup(alpha_.codomain(), beta_.domain()))
    throw NotExact("short exact sequence: middle groups differ");
  if (!alpha_.isInjective())
    throw NotExact("short exact sequence: first map is not injective");
  if (!beta_.isSurjective())
    throw NotExact("short exact sequence: second map is not surjective");
  std::vector<int> image(alpha_.images());
  std::vector<int> kernel = beta_.kernel();
  std::sort(image.begin(), image.end());
  std::sort(kernel.begin(), kernel.end());
  if (image != kernel)
    throw NotExact("short exact sequence: image of first map differs from "
                   "kernel of second");
}

// ---- splitting ----

GroupHom directProductFromLeftSplit(const ShortExactSequence& ses,
                                    const GroupHom& gamma) {
  if (!sameGroup(gamma.domain(), ses.s()) || !sameGroup(gamma.codomain(), ses.k()))
    throw RetractionInvalid("left split: retraction has wrong domain or codomain");
  for (int k = 0; k < ses.k()->order(); ++k)
    if (gamma.apply(ses.alpha().apply(k)) != k)
      throw RetractionInvalid("left split: gamma(alpha(k)) != k at k=" +
                              std::to_string(k));
  GroupPtr product = FiniteGroup::directProduct(ses.k(), ses.u());
  int nu = ses.u()->order();
  std::vector<int> images;
  images.reserve(ses.s()->order());
  for (int s = 0; s < ses.s()->order(); ++s)
    images.push_back(gamma.apply(s) * nu + ses.beta().apply(s));
  GroupHom iso(ses.s(), product, std::move(images));
  if (!iso.isBijective())
    throw RetractionInvalid("left split: (gamma, beta) failed to be bijective");
  return iso;
}

namespace {

// Backtracking search state for a retraction gamma: S -> K. Assignments are
// propagated: once gamma(a) and gamma(b) are known, gamma(ab) is forced.
// Propagated values are consequences of the partial assignment, so pruning
// on them never discards a solution and exhausting the tree is a proof that
// no retraction exists.
struct RetractionSearch {
  const FiniteGroup& s;
  const FiniteGroup& k;
  std::vector<int> image;      // -1 = unassigned
  std::vector<int> assigned;   // indices in assignment order (the trail)

  bool assign(int x, int v) {
    if (image[x] >= 0) return image[x] == v;
    image[x] = v;
    assigned.push_back(x);
    std::size_t from = assigned.size() - 1;
    // close the new assignment against every assigned element (x included)
    for (std::size_t n = from; n < assigned.size(); ++n) {
      int a = assigned[n];
      for (std::size_t m = 0; m <= n; ++m) {
        int b = assigned[m];
        if (!force(s.multiply(a, b), k.multiply(image[a], image[b]))) return false;
        if (!force(s.multiply(b, a), k.multiply(image[b], image[a]))) return false;
      }
    }
    return true;
  }

  bool force(int x, int v) {
    if (image[x] >= 0) return image[x] == v;
    image[x] = v;
    assigned.push_back(x);
    return true;
  }

  void rewind(std::size_t mark) {
    while (assigned.size() > mark) {
      image[assigned.back()] = -1;
      assigned.pop_back();
    }
  }

  bool solve() {
    int x = -1;
    for (int i = 0; i < s.order(); ++i)
      if (image[i] < 0) {
        x = i;
        break;
      }
    if (x < 0) return true;
    for (int v = 0; v < k.order(); ++v) {
      std::size_t mark = assigned.size();
      if (assign(x, v) && solve()) return true;
      rewind(mark);
    }
    return false;
  }
};

}  // namespace

std::optional<GroupHom> findRetraction(const ShortExactSequence& ses) {
  RetractionSearch search{*ses.s(), *ses.k(),
                          std::vector<int>(ses.s()->order(), -1),
                          {}};
  // gamma(alpha(k)) = k is forced before any choice is made.
  for (int k = 0; k < ses.k()->order(); ++k)
    if (!search.assign(ses.alpha().apply(k), k)) return std::nullopt;
  if (!search.solve()) return std::nullopt;
  return GroupHom(ses.s(), ses.k(), std::move(search.image));
}

}  // namespace ucov
