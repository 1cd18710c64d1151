#include "brwa/algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace brwa {
namespace {

constexpr Complex kI{0.0, 1.0};

struct NamedGenerator {
  std::string_view name;
  Generator value;
};

constexpr std::array kGeneratorNames{
    NamedGenerator{"J1", Generator::J1},      NamedGenerator{"J2", Generator::J2},
    NamedGenerator{"J3", Generator::J3},      NamedGenerator{"J+", Generator::Jplus},
    NamedGenerator{"J-", Generator::Jminus},  NamedGenerator{"I1", Generator::I1},
    NamedGenerator{"I2", Generator::I2},      NamedGenerator{"I3", Generator::I3},
    NamedGenerator{"I+", Generator::Iplus},   NamedGenerator{"I-", Generator::Iminus},
    NamedGenerator{"Kt1", Generator::Kt1},    NamedGenerator{"Kt2", Generator::Kt2},
    NamedGenerator{"K1", Generator::K1},      NamedGenerator{"K2", Generator::K2},
    NamedGenerator{"K3", Generator::K3},
};

// Ladder products reused by every generator.
struct Pieces {
  OperatorMatrix a, ad, b, bd, id;

  explicit Pieces(const FockBasis& basis) : id(identity(basis)) {
    auto la = build_ladder(basis, Mode::a);
    auto lb = build_ladder(basis, Mode::b);
    a = std::move(la.annihilator);
    ad = std::move(la.creator);
    b = std::move(lb.annihilator);
    bd = std::move(lb.creator);
  }
};

OperatorMatrix mul(const OperatorMatrix& x, const OperatorMatrix& y) { return OperatorMatrix(x * y); }

OperatorMatrix make(const Pieces& p, Generator g) {
  switch (g) {
    case Generator::Jplus:
      return mul(p.ad, p.bd);
    case Generator::Jminus:
      return mul(p.a, p.b);
    case Generator::J1:
      return 0.5 * OperatorMatrix(mul(p.ad, p.bd) + mul(p.a, p.b));
    case Generator::J2:
      return (-0.5 * kI) * OperatorMatrix(mul(p.ad, p.bd) - mul(p.a, p.b));
    case Generator::J3:
      return 0.5 * OperatorMatrix(mul(p.ad, p.a) + mul(p.bd, p.b) + p.id);
    case Generator::Iplus:
      return mul(p.ad, p.b);
    case Generator::Iminus:
      return mul(p.bd, p.a);
    case Generator::I1:
      return 0.5 * OperatorMatrix(mul(p.ad, p.b) + mul(p.bd, p.a));
    case Generator::I2:
      return (-0.5 * kI) * OperatorMatrix(mul(p.ad, p.b) - mul(p.bd, p.a));
    case Generator::I3:
    case Generator::K3:
      return 0.5 * OperatorMatrix(mul(p.ad, p.a) - mul(p.bd, p.b));
    case Generator::Kt1:
      return 0.25 * OperatorMatrix((mul(p.a, p.a) + mul(p.ad, p.ad)) + (mul(p.b, p.b) + mul(p.bd, p.bd)));
    case Generator::Kt2:
      return (0.25 * kI) * OperatorMatrix((mul(p.a, p.a) - mul(p.ad, p.ad)) - (mul(p.b, p.b) - mul(p.bd, p.bd)));
    case Generator::K1:
      return 0.25 * OperatorMatrix((mul(p.a, p.a) + mul(p.ad, p.ad)) - (mul(p.b, p.b) + mul(p.bd, p.bd)));
    case Generator::K2:
      return (0.25 * kI) * OperatorMatrix((mul(p.a, p.a) - mul(p.ad, p.ad)) + (mul(p.b, p.b) - mul(p.bd, p.bd)));
  }
  throw std::logic_error("unhandled generator");
}

}  // namespace

Ladder build_ladder(const FockBasis& basis, Mode mode) {
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(basis.dim()));
  const int n = basis.cutoff();
  for (int na = 0; na < n; ++na) {
    for (int nb = 0; nb < n; ++nb) {
      const int occ = mode == Mode::a ? na : nb;
      if (occ == 0) continue;
      const Index from = basis.index(na, nb);
      const Index to = mode == Mode::a ? basis.index(na - 1, nb) : basis.index(na, nb - 1);
      entries.emplace_back(to, from, std::sqrt(static_cast<double>(occ)));
    }
  }
  Ladder out;
  out.annihilator.resize(basis.dim(), basis.dim());
  out.annihilator.setFromTriplets(entries.begin(), entries.end());
  out.creator = out.annihilator.adjoint();
  return out;
}

Generator generator_from_name(std::string_view name) {
  std::string normalized(name);
  // Unicode minus (U+2212) is common in hand-written configs.
  if (const auto pos = normalized.find("\xE2\x88\x92"); pos != std::string::npos) {
    normalized.replace(pos, 3, "-");
  }
  for (const auto& entry : kGeneratorNames) {
    if (entry.name == normalized) return entry.value;
  }
  throw std::invalid_argument("unknown generator name: " + std::string(name));
}

std::string_view generator_name(Generator g) {
  for (const auto& entry : kGeneratorNames) {
    if (entry.value == g) return entry.name;
  }
  return "?";
}

bool is_hermitian_generator(Generator g) {
  return g != Generator::Jplus && g != Generator::Jminus && g != Generator::Iplus &&
         g != Generator::Iminus;
}

OperatorMatrix build_generator(const FockBasis& basis, Generator g) {
  const Pieces pieces(basis);
  return pruned(make(pieces, g));
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionMismatch("commutator of " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + " operators");
  }
  return OperatorMatrix(a * b) - OperatorMatrix(b * a);
}

bool AlgebraReport::passed() const {
  return std::all_of(relations.begin(), relations.end(),
                     [&](const RelationResidual& r) { return r.residual <= tolerance; });
}

double AlgebraReport::worst() const {
  double w = 0.0;
  for (const auto& r : relations) w = std::max(w, r.residual);
  return w;
}

AlgebraReport verify_algebra(const FockBasis& basis, const InteriorProjector& interior,
                             double tolerance) {
  if (!(interior.basis() == basis)) {
    throw DimensionMismatch("interior projector built for a different basis");
  }
  if (interior.interior_cutoff() > basis.cutoff() - 3) {
    throw std::invalid_argument("interior cutoff M=" + std::to_string(interior.interior_cutoff()) +
                                " too large for N=" + std::to_string(basis.cutoff()) +
                                " (need M <= N - 3)");
  }

  const Pieces p(basis);
  const auto G = [&](Generator g) { return make(p, g); };
  const OperatorMatrix J1 = G(Generator::J1), J2 = G(Generator::J2), J3 = G(Generator::J3);
  const OperatorMatrix Jp = G(Generator::Jplus), Jm = G(Generator::Jminus);
  const OperatorMatrix I1 = G(Generator::I1), I2 = G(Generator::I2), I3 = G(Generator::I3);
  const OperatorMatrix Ip = G(Generator::Iplus), Im = G(Generator::Iminus);
  const OperatorMatrix Kt1 = G(Generator::Kt1), Kt2 = G(Generator::Kt2);
  const OperatorMatrix K1 = G(Generator::K1), K2 = G(Generator::K2);
  const OperatorMatrix& K3 = I3;
  const OperatorMatrix J3shift = J3 - 0.5 * p.id;

  AlgebraReport report;
  report.cutoff = basis.cutoff();
  report.interior_cutoff = interior.interior_cutoff();
  report.tolerance = tolerance;

  const auto add = [&](std::string name, std::string source, const OperatorMatrix& residual) {
    report.relations.push_back({std::move(name), std::move(source), interior.max_norm(residual)});
  };
  const auto worst_of = [&](std::initializer_list<OperatorMatrix> residuals) {
    double w = 0.0;
    for (const auto& r : residuals) w = std::max(w, interior.max_norm(r));
    return w;
  };

  add("[J+,J-] = -2 J3", "su11", commutator(Jp, Jm) + 2.0 * J3);
  report.relations.push_back(
      {"[J3,J+-] = +-J+-", "su11",
       worst_of({commutator(J3, Jp) - Jp, commutator(J3, Jm) + Jm})});
  add("[I+,I-] = 2 I3", "su2", commutator(Ip, Im) - 2.0 * I3);
  report.relations.push_back(
      {"[I3,I+-] = +-I+-", "su2",
       worst_of({commutator(I3, Ip) - Ip, commutator(I3, Im) + Im})});
  report.relations.push_back(
      {"[J3 - 1/2, I_i] = 0", "casimir",
       worst_of({commutator(J3shift, I1), commutator(J3shift, I2), commutator(J3shift, I3),
                 commutator(J3shift, Ip), commutator(J3shift, Im)})});
  report.relations.push_back(
      {"[I3, J_i] = 0", "casimir",
       worst_of({commutator(I3, J1), commutator(I3, J2), commutator(I3, J3), commutator(I3, Jp),
                 commutator(I3, Jm)})});
  add("[Kt1,Kt2] = -i Kt3", "squeeze_sum", commutator(Kt1, Kt2) + kI * K3);
  report.relations.push_back(
      {"[Kt3,Kt1,2] = +-i Kt2,1", "squeeze_sum",
       worst_of({commutator(K3, Kt1) - kI * Kt2, commutator(K3, Kt2) + kI * Kt1})});
  add("[K1,K2] = -i K3", "squeeze_diff", commutator(K1, K2) + kI * K3);
  report.relations.push_back(
      {"[K3,K1,2] = +-i K2,1", "squeeze_diff",
       worst_of({commutator(K3, K1) - kI * K2, commutator(K3, K2) + kI * K1})});
  add("[J2,I1] = i Kt1", "mixed_j2", commutator(J2, I1) - kI * Kt1);
  add("[J2,K2] = 0", "mixed_j2", commutator(J2, K2));
  add("[K2,J3] = i Kt1", "mixed_j2", commutator(K2, J3) - kI * Kt1);
  add("[K2,I3] = i K1", "mixed_k2", commutator(K2, I3) - kI * K1);
  add("[K2,Kt1] = i J3", "mixed_k2", commutator(K2, Kt1) - kI * J3);
  return report;
}

}  // namespace brwa
