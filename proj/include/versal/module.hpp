#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "versal/linalg.hpp"
#include "versal/standard_basis.hpp"

namespace versal {

/// kappa-dimension: a finite count or INFINITE.
struct Dimension {
  bool infinite = false;
  std::size_t value = 0;

  static Dimension finite(std::size_t n) { return Dimension{false, n}; }
  static Dimension unbounded() { return Dimension{true, 0}; }
  bool operator==(const Dimension&) const = default;
  std::string to_string() const { return infinite ? "INFINITE" : std::to_string(value); }
};

/// Cokernel of a presentation matrix over a polynomial ring (global order):
/// R^rank modulo the submodule spanned by `relations` (the matrix columns).
class PresentedModule {
 public:
  PresentedModule(RingPtr ring, std::size_t rank, std::vector<FreeVec> relations);
  /// R^rank.
  static PresentedModule free(RingPtr ring, std::size_t rank);
  /// R/(gens).
  static PresentedModule cyclic(const RingPtr& ring, const std::vector<Poly>& gens);
  /// Rows of the presentation matrix (rank rows, one column per relation).
  static PresentedModule from_matrix(const RingPtr& ring, const std::vector<std::vector<Poly>>& rows);

  const RingPtr& ring() const { return data_->ring; }
  std::size_t rank() const { return data_->rank; }
  const std::vector<FreeVec>& relations() const { return data_->relations; }
  std::vector<std::vector<Poly>> matrix() const;
  const StandardBasis& relation_basis() const { return *data_->basis; }

  /// Vector of the free cover in this module's ring and scheme.
  FreeVec cover(const std::vector<Poly>& entries) const;
  FreeVec generator(std::size_t i) const;
  FreeVec zero_vector() const;
  /// Normal form modulo the relations.
  FreeVec reduce(const FreeVec& v) const;
  bool is_zero_element(const FreeVec& v) const { return reduce(v).is_zero(); }
  bool is_zero_module() const;

  Dimension dimension() const;
  /// Exact coordinates when the module is finite-dimensional.
  std::shared_ptr<const FiniteQuotient> finite_quotient() const;

  /// Same ring, rank and relations.
  bool operator==(const PresentedModule& o) const;
  std::string to_string() const;

 private:
  struct Data {
    RingPtr ring;
    std::size_t rank;
    std::vector<FreeVec> relations;
    std::shared_ptr<const StandardBasis> basis;
    std::shared_ptr<const FiniteQuotient> quotient;
  };
  std::shared_ptr<const Data> data_;
};

/// Homomorphism between presented modules, given by images of the source
/// generators in the target's free cover. Construction certifies that every
/// source relation maps into the target relations.
class ModuleHom {
 public:
  ModuleHom(PresentedModule source, PresentedModule target, std::vector<FreeVec> images);

  static ModuleHom identity(const PresentedModule& m);
  static ModuleHom zero(const PresentedModule& source, const PresentedModule& target);

  const PresentedModule& source() const { return source_; }
  const PresentedModule& target() const { return target_; }
  const std::vector<FreeVec>& images() const { return images_; }
  /// target.rank x source.rank entries; column j is the image of generator j.
  std::vector<std::vector<Poly>> matrix() const;

  /// Image of a source cover vector, as a target cover vector (unreduced).
  FreeVec apply(const FreeVec& x) const;
  bool is_zero() const;
  /// Same map, i.e. images agree modulo the target relations.
  bool equals(const ModuleHom& o) const;

  ModuleHom operator+(const ModuleHom& o) const;
  ModuleHom operator-(const ModuleHom& o) const;
  ModuleHom operator-() const;
  ModuleHom scaled(const FieldElem& c) const;

 private:
  PresentedModule source_, target_;
  std::vector<FreeVec> images_;
};

/// Linear algebra view of a finite-dimensional module on its staircase basis.
class FiniteModule {
 public:
  explicit FiniteModule(const PresentedModule& n);

  const PresentedModule& module() const { return mod_; }
  std::size_t dim() const { return q_->dimension(); }
  Vec coords(const FreeVec& v) const;
  FreeVec element(const Vec& c) const;
  /// Multiplication by p.
  Matrix mult(const Poly& p) const;

 private:
  PresentedModule mod_;
  std::shared_ptr<const FiniteQuotient> q_;
};

/// Matrix of phi -> phi o d from N^src to N^{cols.size()}, where d has the
/// given columns (vectors of rank src) and N = rep.module().
Matrix cochain_matrix(const FiniteModule& rep, std::size_t src, const std::vector<FreeVec>& cols);

/// g o f
ModuleHom compose(const ModuleHom& g, const ModuleHom& f);

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);

/// Unit elimination on a presentation: a generator hit by a relation with a
/// constant coefficient is rewritten in terms of the other generators.
struct Reduction {
  std::size_t original = 0;
  std::vector<std::size_t> kept;
  /// (old index, expression in the old cover), applied in order.
  std::vector<std::pair<std::size_t, FreeVec>> substitutions;

  /// Rewrites an old-cover vector in terms of the kept generators.
  FreeVec to_new(const FreeVec& v) const;
};

struct Minimized {
  PresentedModule module;
  Reduction reduction;
};

Minimized minimize(const RingPtr& ring, std::size_t rank, std::vector<FreeVec> relations);

/// span(gens + zeros) / span(zeros) inside a free cover, presented on the
/// kept subset of the gens.
struct Subquotient {
  PresentedModule module;
  std::vector<FreeVec> gens;   // kept generators, in the cover
  std::vector<FreeVec> all_gens;
  std::vector<FreeVec> zeros;
  std::shared_ptr<const Lifter> lifter;  // over all_gens + zeros
  Reduction reduction;

  /// Coordinates (in the module's cover) of a cover element lying in
  /// span(gens + zeros).
  std::optional<FreeVec> coordinates(const FreeVec& v) const;
};

Subquotient make_subquotient(const RingPtr& ring, std::size_t cover_rank, std::vector<FreeVec> gens,
                             std::vector<FreeVec> zeros);

/// Generators (in the source cover) of {x : f(x) = 0 in the target}.
std::vector<FreeVec> kernel_generators(const ModuleHom& f);
/// ker f as a subquotient of the source cover.
Subquotient kernel(const ModuleHom& f);

bool is_injective(const ModuleHom& f);
bool is_surjective(const ModuleHom& f);
bool is_isomorphism(const ModuleHom& f);

/// Hom(M, N): a kappa-basis when finite-dimensional, module generators
/// together with a presentation otherwise.
struct HomSpace {
  bool finite = false;
  Dimension dimension;
  std::vector<ModuleHom> generators;
  std::optional<PresentedModule> presentation;
};

HomSpace hom_space(const PresentedModule& m, const PresentedModule& n);

/// Free resolution F3 -> F2 -> F1 -> F0 -> M (differentials as column lists).
struct FreeResolution {
  std::vector<std::size_t> ranks;              // F0..F3
  std::vector<std::vector<FreeVec>> maps;      // maps[i]: F_{i+1} -> F_i
};

FreeResolution free_resolution(const PresentedModule& m, std::size_t length = 3);

Dimension ext_dimension(const PresentedModule& m, const PresentedModule& n, int i);

}  // namespace versal
