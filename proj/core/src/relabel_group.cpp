#include "bellopt/relabel_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace bellopt {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) image[i] = i;
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (int i = 0; i < size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) throw std::invalid_argument("Permutation: size mismatch");
  std::vector<int> image(h.size());
  for (int i = 0; i < h.size(); ++i) image[i] = g.apply(h.apply(i));
  return Permutation(std::move(image));
}

namespace {

Permutation swap2(bool flip) { return Permutation(flip ? std::vector<int>{1, 0} : std::vector<int>{0, 1}); }

std::array<int, kDim> index_permutation(const PartyRelabeling& g) {
  std::array<int, kDim> perm{};
  for (int n = 0; n < kDim; ++n) {
    const Labels t = labels_of(n);
    // party 0 carries (a, x), party 1 carries (b, y)
    const auto out = g.apply_primitive({{t.a, t.x}, {t.b, t.y}});
    perm[n] = index_of(out[0].first, out[1].first, out[0].second, out[1].second);
  }
  return perm;
}

}  // namespace

Relabeling::Relabeling() : Relabeling(false, {false, false}, {{{false, false}, {false, false}}}) {}

Relabeling::Relabeling(bool party_swap, std::array<bool, 2> setting_flip,
                       std::array<std::array<bool, 2>, 2> outcome_flip) {
  std::vector<LocalRelabeling> parties;
  for (int m = 0; m < 2; ++m)
    parties.emplace_back(swap2(setting_flip[m]),
                         std::vector<Permutation>{swap2(outcome_flip[m][0]), swap2(outcome_flip[m][1])});
  element_ = PartyRelabeling(swap2(party_swap), std::move(parties));
  perm_ = index_permutation(element_);
}

Relabeling::Relabeling(PartyRelabeling element) : element_(std::move(element)) {
  if (element_.nodes() != 2) throw std::invalid_argument("Relabeling: expected two parties");
  for (int m = 0; m < 2; ++m) {
    const auto& local = element_.base(m);
    if (local.nodes() != 2 || local.base(0).size() != 2 || local.base(1).size() != 2)
      throw std::invalid_argument("Relabeling: expected two settings with two outcomes");
  }
  perm_ = index_permutation(element_);
}

bool Relabeling::party_swap() const { return element_.top().apply(0) == 1; }

bool Relabeling::setting_flip(int party) const { return element_.base(party).top().apply(0) == 1; }

bool Relabeling::outcome_flip(int party, int setting) const {
  return element_.base(party).base(setting).apply(0) == 1;
}

Mat16 Relabeling::matrix() const {
  Mat16 p = Mat16::Zero();
  for (int n = 0; n < kDim; ++n) p(perm_[n], n) = 1.0;
  return p;
}

Relabeling Relabeling::inverse() const { return Relabeling(element_.inverse()); }

Relabeling operator*(const Relabeling& g, const Relabeling& h) { return Relabeling(g.element_ * h.element_); }

int Relabeling::code() const {
  int c = party_swap() ? 1 : 0;
  for (int m = 0; m < 2; ++m) {
    if (setting_flip(m)) c |= 1 << (1 + m);
    for (int s = 0; s < 2; ++s)
      if (outcome_flip(m, s)) c |= 1 << (3 + 2 * m + s);
  }
  return c;
}

Relabeling Relabeling::from_code(int c) {
  if (c < 0 || c >= 128) throw std::invalid_argument("Relabeling: code out of range");
  auto bit = [c](int k) { return ((c >> k) & 1) != 0; };
  return Relabeling(bit(0), {bit(1), bit(2)}, {{{bit(3), bit(4)}, {bit(5), bit(6)}}});
}

OutcomeVector act(const Relabeling& g, const OutcomeVector& v) {
  Vec16 out;
  for (int n = 0; n < kDim; ++n) out[g.map_index(n)] = v[n];
  return OutcomeVector(out);
}

std::vector<Relabeling> enumerate_group() {
  std::vector<Relabeling> group;
  group.reserve(128);
  for (int c = 0; c < 128; ++c) group.push_back(Relabeling::from_code(c));
  return group;
}

Relabeling global_outcome_flip() { return Relabeling(false, {false, false}, {{{true, true}, {true, true}}}); }

std::string_view name_of(Block b) {
  switch (b) {
    case Block::NO1: return "NO1";
    case Block::NO2: return "NO2";
    case Block::NO3: return "NO3";
    case Block::MARG: return "MARG";
    case Block::CORR: return "CORR";
    case Block::SI: return "SI";
  }
  return "?";
}

std::vector<Signs> members(Block b) {
  auto join = [](std::initializer_list<Subspace> parts) {
    std::vector<Signs> out;
    for (Subspace s : parts) {
      const auto m = members(s);
      out.insert(out.end(), m.begin(), m.end());
    }
    return out;
  };
  switch (b) {
    case Block::NO1: return join({Subspace::NO1});
    case Block::NO2: return join({Subspace::NO2});
    case Block::NO3: return join({Subspace::NO3});
    case Block::MARG: return join({Subspace::MARG_A, Subspace::MARG_B});
    case Block::CORR: return join({Subspace::CORR});
    case Block::SI: return join({Subspace::SI_TO_A, Subspace::SI_TO_B});
  }
  return {};
}

bool verify_invariance(std::span<const Relabeling> group, std::span<const Signs> basis, double tol) {
  const Mat16 complement = Mat16::Identity() - projector(basis);
  for (const Relabeling& g : group)
    for (const Signs& s : basis) {
      const Vec16 moved = act(g, q_basis(s)).coeffs();
      if ((complement * moved).norm() > tol) return false;
    }
  return true;
}

bool verify_invariance(std::span<const Relabeling> group, Block b, double tol) {
  const auto basis = members(b);
  return verify_invariance(group, std::span<const Signs>(basis), tol);
}

int commutant_dimension(std::span<const Relabeling> group, double tol) {
  // vec(M P - P M) = (P^T kron I - I kron P) vec(M); accumulate the normal
  // matrix of the stacked constraints and count its zero eigenvalues.
  constexpr int n = kDim * kDim;
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(n, n);
  const Mat16 eye = Mat16::Identity();
  Eigen::MatrixXd constraint(n, n);
  for (const Relabeling& g : group) {
    const Mat16 p = g.matrix();
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        constraint.block(i * kDim, j * kDim, kDim, kDim) = p(j, i) * eye - (i == j ? p : Mat16::Zero());
    normal.noalias() += constraint.transpose() * constraint;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normal, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return static_cast<int>(std::count_if(ev.data(), ev.data() + ev.size(), [tol](double e) { return e < tol; }));
}

Mat16 averaging_projector(std::span<const Relabeling> group) {
  Mat16 sum = Mat16::Zero();
  for (const Relabeling& g : group) sum += g.matrix();
  return sum / static_cast<double>(group.size());
}

std::uint64_t cayley_checksum(std::span<const Relabeling> group) {
  std::uint64_t h = 1469598103934665603ull;
  for (const Relabeling& g : group)
    for (const Relabeling& k : group) {
      h ^= static_cast<std::uint64_t>((g * k).code());
      h *= 1099511628211ull;
    }
  return h;
}

}  // namespace bellopt
