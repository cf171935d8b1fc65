#pragma once

#include "cylattice/intmat.hpp"
#include "cylattice/numeric.hpp"

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cylattice {

class LatticeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class LatticeMismatchError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class NoSolutionError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class NonIntegralError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class UnderDeterminedError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

// A finite-rank integral lattice: named basis plus symmetric Gram matrix.
// Immutable once constructed; shared between all classes bound to it.
class BilinearLattice {
  public:
    BilinearLattice(std::string id, std::vector<std::string> basis_labels, IntMat gram)
        : id_(std::move(id)), labels_(std::move(basis_labels)), gram_(std::move(gram)) {
        if (gram_.rows() != gram_.cols())
            throw std::invalid_argument("lattice '" + id_ + "': gram matrix must be square");
        if (gram_.rows() != labels_.size())
            throw std::invalid_argument("lattice '" + id_ + "': gram dimension must match basis labels");
        std::set<std::string> seen(labels_.begin(), labels_.end());
        if (seen.size() != labels_.size())
            throw std::invalid_argument("lattice '" + id_ + "': basis labels must be pairwise distinct");
        for (std::size_t i = 0; i < gram_.rows(); ++i)
            for (std::size_t j = i + 1; j < gram_.cols(); ++j)
                if (gram_.at(i, j) != gram_.at(j, i))
                    throw std::invalid_argument("lattice '" + id_ + "': gram matrix must be symmetric");
    }

    const std::string& id() const { return id_; }
    std::size_t rank() const { return labels_.size(); }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const IntMat& gram() const { return gram_; }

    bool structurally_equal(const BilinearLattice& o) const {
        return id_ == o.id_ && labels_ == o.labels_ && gram_ == o.gram_;
    }

  private:
    std::string id_;
    std::vector<std::string> labels_;
    IntMat gram_;
};

using Lattice = std::shared_ptr<const BilinearLattice>;

inline Lattice make_lattice(std::string id, std::vector<std::string> labels, IntMat gram) {
    return std::make_shared<const BilinearLattice>(std::move(id), std::move(labels), std::move(gram));
}

inline bool same_lattice(const Lattice& a, const Lattice& b) {
    return a == b || (a && b && a->structurally_equal(*b));
}

// Integer divisor class bound to a lattice. Immutable value; all operations
// return fresh classes, so concurrent use needs no synchronization.
class DivisorClass {
  public:
    DivisorClass(Lattice lattice, IntVec coords) : lattice_(std::move(lattice)), coords_(std::move(coords)) {
        if (!lattice_) throw std::invalid_argument("divisor class requires a lattice");
        if (coords_.size() != lattice_->rank())
            throw std::invalid_argument("divisor class on '" + lattice_->id() + "': expected " +
                                        std::to_string(lattice_->rank()) + " coordinates, got " +
                                        std::to_string(coords_.size()));
    }

    static DivisorClass zero(const Lattice& lattice) {
        return DivisorClass(lattice, IntVec(lattice->rank(), Int(0)));
    }

    static DivisorClass basis(const Lattice& lattice, std::size_t i) {
        IntVec c(lattice->rank(), Int(0));
        c.at(i) = 1;
        return DivisorClass(lattice, std::move(c));
    }

    const Lattice& lattice() const { return lattice_; }
    const IntVec& coords() const { return coords_; }
    std::size_t rank() const { return coords_.size(); }

    bool is_zero() const {
        for (const Int& c : coords_)
            if (c != 0) return false;
        return true;
    }

    DivisorClass operator+(const DivisorClass& o) const {
        require_same(o, "add");
        IntVec c(coords_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
        return DivisorClass(lattice_, std::move(c));
    }

    DivisorClass operator-(const DivisorClass& o) const {
        require_same(o, "subtract");
        IntVec c(coords_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
        return DivisorClass(lattice_, std::move(c));
    }

    DivisorClass operator-() const {
        IntVec c(coords_);
        for (Int& x : c) x = -x;
        return DivisorClass(lattice_, std::move(c));
    }

    DivisorClass operator*(const Int& k) const {
        IntVec c(coords_);
        for (Int& x : c) x *= k;
        return DivisorClass(lattice_, std::move(c));
    }

    bool operator==(const DivisorClass& o) const {
        return same_lattice(lattice_, o.lattice_) && coords_ == o.coords_;
    }

    std::string str() const { return cylattice::to_string(coords_); }

    void require_same(const DivisorClass& o, const char* what) const {
        if (!same_lattice(lattice_, o.lattice_))
            throw LatticeMismatchError(std::string("cannot ") + what + " classes from different lattices: '" +
                                       lattice_->id() + "' vs '" + o.lattice_->id() + "'");
    }

  private:
    Lattice lattice_;
    IntVec coords_;
};

inline DivisorClass operator*(const Int& k, const DivisorClass& d) { return d * k; }
inline DivisorClass operator*(long k, const DivisorClass& d) { return d * Int(k); }
inline DivisorClass operator*(const DivisorClass& d, long k) { return d * Int(k); }

// Shared verdict for the one-sided freeness tests: they certify freeness or
// abstain, never claim non-freeness.
enum class Freeness { Free, Unknown };

inline const char* to_cstr(Freeness f) { return f == Freeness::Free ? "Free" : "Unknown"; }

// Does m preserve the lattice's bilinear form (m^T G m = G)?
inline bool is_lattice_isometry(const IntMat& m, const Lattice& lat) {
    if (m.rows() != lat->rank() || m.cols() != lat->rank()) return false;
    return m.transposed() * lat->gram() * m == lat->gram();
}

// Intersection pairing u^T . gram . v; symmetric and bilinear.
inline Int pair(const DivisorClass& u, const DivisorClass& v) {
    u.require_same(v, "pair");
    const IntMat& g = u.lattice()->gram();
    Int acc = 0;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        if (u.coords()[i] == 0) continue;
        Int row = 0;
        for (std::size_t j = 0; j < g.cols(); ++j) row += g.at(i, j) * v.coords()[j];
        acc += u.coords()[i] * row;
    }
    return acc;
}

inline Int self_intersection(const DivisorClass& d) { return pair(d, d); }

struct SpanRankResult {
    std::size_t rank = 0;
    std::vector<Int> elementary_divisors;
};

// Rank and Smith elementary divisors of the integer matrix whose rows are
// the coordinate vectors. Empty input yields (0, []).
inline SpanRankResult span_rank_snf(const std::vector<DivisorClass>& vectors) {
    if (vectors.empty()) return {};
    const Lattice& lat = vectors.front().lattice();
    for (const DivisorClass& v : vectors) vectors.front().require_same(v, "span");
    IntMat m(vectors.size(), lat->rank());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < lat->rank(); ++j) m.at(i, j) = vectors[i].coords()[j];
    SpanRankResult r;
    r.elementary_divisors = smith_elementary_divisors(std::move(m));
    r.rank = r.elementary_divisors.size();
    return r;
}

// Recover the unique integral class D with pair(D, probe_i) = target_i.
// Errors: UnderDetermined when the probes do not span rationally,
// NoSolution for inconsistent targets, NonIntegral when the exact rational
// solution fails to be integral.
inline DivisorClass solve_from_pairings(const Lattice& lattice, const std::vector<DivisorClass>& probes,
                                        const IntVec& targets) {
    if (probes.size() != targets.size())
        throw std::invalid_argument("solve_from_pairings: probes and targets must have equal length");
    const std::size_t n = lattice->rank();
    IntMat m(probes.size(), n); // rows: probe_i^T . gram
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (!same_lattice(probes[i].lattice(), lattice))
            throw LatticeMismatchError("solve_from_pairings: probe bound to '" + probes[i].lattice()->id() +
                                       "', expected '" + lattice->id() + "'");
        for (std::size_t j = 0; j < n; ++j) {
            Int acc = 0;
            for (std::size_t k = 0; k < n; ++k) acc += probes[i].coords()[k] * lattice->gram().at(k, j);
            m.at(i, j) = acc;
        }
    }
    if (rational_rank(m) < n)
        throw UnderDeterminedError("solve_from_pairings: probes do not span lattice '" + lattice->id() + "'");
    LinearSolveResult sol = solve_rational(m, targets);
    if (sol.status == LinearSolveStatus::Inconsistent)
        throw NoSolutionError("solve_from_pairings: targets are inconsistent on lattice '" + lattice->id() + "'");
    IntVec coords(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat x = sol.solution[j];
        x.canonicalize();
        if (x.get_den() != 1)
            throw NonIntegralError("solve_from_pairings: solution is rational but not integral (coordinate " +
                                   lattice->basis_labels()[j] + " = " + x.get_str() + ")");
        coords[j] = x.get_num();
    }
    return DivisorClass(lattice, std::move(coords));
}

} // namespace cylattice
