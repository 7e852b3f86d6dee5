#pragma once

#include "vab/algebroid.hpp"

namespace vab {

/// Z/T sector assignment for the basis of A and of B: the diagonalized form of
/// a finite-order automorphism. Sector arithmetic is everything this engine
/// ever needs from the automorphism; the eigenvalues e^{2 pi i r/T} are never
/// materialized.
struct SectorGrading {
    int T = 1;
    std::vector<int> secA;
    std::vector<int> secB;
};

SectorGrading trivial_grading(int dimA, int dimB);

/// Every structure-constant entry must respect mod-T sector arithmetic and the
/// identity must sit in sector 0. Passing is literally the statement that the
/// diagonal map v -> zeta^{r(v)} v is an algebroid automorphism.
CheckReport check_sector_grading(const VertexAlgebroid& b, const SectorGrading& g);

/// The same grading compatibility for a bare 1-truncated conformal algebra
/// (secA grades C0, secB grades C1).
CheckReport check_tca_grading(const Tca& c, const SectorGrading& g);

/// A linear candidate endomorphism, block-diagonal across A and B.
struct GradedEndomorphism {
    LinMap on_a; // A -> A
    LinMap on_b; // B -> B
};

GradedEndomorphism identity_endomorphism(const VertexAlgebroid& b);
GradedEndomorphism compose(const GradedEndomorphism& f, const GradedEndomorphism& g);
/// For T <= 2 the diagonal sector map (scale sector r by (-1)^r) is rational.
GradedEndomorphism diagonal_endomorphism(const VertexAlgebroid& b, const SectorGrading& g);

struct EndoReport {
    CheckReport checks;
    bool bijective = false;
    /// Multiplicative order if bijective and found within max_order, else -1.
    int order = -1;
};

/// The six homomorphism conditions on all basis tuples, plus bijectivity and
/// order detection (capped at max_order).
EndoReport check_algebroid_endomorphism(const VertexAlgebroid& b, const GradedEndomorphism& f, int max_order = 64);

/// Sector-0 restriction: A^0 and the vertex A^0-algebroid B^0.
struct FixedSubalgebroid {
    CommAlgebra A0;
    VertexAlgebroid B0;
    std::vector<int> idxA0; // positions of the A^0 basis inside A
    std::vector<int> idxB0; // positions of the B^0 basis inside B
};

FixedSubalgebroid fixed_subalgebroid(const VertexAlgebroid& b, const SectorGrading& g);

/// I = sum_{r=1}^{T-1} A^r . A^{T-r} inside A^0, with the quotient algebra A^0/I.
struct OverlapIdeal {
    Subspace ideal;              // inside A (supported on sector-0 coordinates)
    std::vector<int> idxA0;      // A^0 basis positions inside A
    CommAlgebra quotient;        // A^0 / I
    std::vector<int> complement; // A indices whose classes form the quotient basis
    CheckReport ideal_check;     // A^0 . I <= I
};

OverlapIdeal overlap_ideal(const CommAlgebra& a, const SectorGrading& g);

} // namespace vab
