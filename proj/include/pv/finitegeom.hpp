#pragma once
#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "pv/cyclo.hpp"
#include "pv/fq.hpp"
#include "pv/groupkit.hpp"

namespace pv {

using FE = FqField::E;

// square matrix over F_{p^2}, n <= 6
struct FMat {
    int n = 0;
    std::array<FE, 36> a{};

    static FMat identity(int n);
    FE& operator()(int i, int j) { return a[i * n + j]; }
    FE operator()(int i, int j) const { return a[i * n + j]; }
    bool operator==(const FMat& o) const { return n == o.n && a == o.a; }
};

FMat fmul(const FqField& f, const FMat& x, const FMat& y);
FMat finverse(const FqField& f, const FMat& x);  // NearSingular if not invertible
// similitude of the hermitian form J_n, or -1 when x is not a unitary similitude
int fsimilitude(const FqField& f, const FMat& x);

// reduction of an integral matrix
FMat residue_matrix(const FqField& f, const Mat<LocalElem>& g);
FMat residue_matrix(const FqField& f, const Mat<QuadElem>& g);

// residue-level image of a compact subgroup (K, U, I' tags); BadParams for other tags
bool residue_member(const FqField& f, const FMat& g, SubgroupTag tag);

enum class FlagKind { KlingenGU22, SiegelGU33 };

// RREF rows of a point, row-major k x n, zero padded
using FlagKey = std::array<uint8_t, 18>;

struct FlagSpace {
    FlagKind kind;
    int p, d;
    int k, n;  // subspace dimension, ambient dimension
    std::shared_ptr<const FqField> field;
    std::vector<FlagKey> points;  // sorted

    int index_of(const FlagKey& key) const;  // -1 if absent
    // right action: row space of (rows * h)
    FlagKey act(const FlagKey& key, const FMat& h) const;
    // point of P\G attached to g: row 2 (Klingen) or rows 3..5 (Siegel)
    FlagKey point_of(const FMat& g) const;
    bool isotropic(const FlagKey& key) const;
};

FlagSpace enumerate_flags(int p, int d, FlagKind kind);
long classical_flag_count(int p, FlagKind kind);

struct OrbitPartition {
    std::vector<std::vector<int>> orbits;  // point indices, BFS order, root first
    std::vector<int> orbit_of;
    std::vector<int> parent;  // BFS tree, -1 at roots
    std::vector<int> via;     // generator index used to reach the point
};

OrbitPartition orbit_count(const FlagSpace& space, const std::vector<FMat>& gens);
// generator indices taking the orbit root to the point
std::vector<int> orbit_witness(const OrbitPartition& part, int point);

// elementary generators of the residue image of a compact subgroup of GU(n,n):
// torus, similitude, Levi roots, unipotent roots and Weyl swaps, kept when they satisfy residue_member
std::vector<FMat> residue_generators(const FqField& f, int n, SubgroupTag tag);

// order of the group generated, by closure (for small groups only)
long generated_order(const FqField& f, const std::vector<FMat>& gens, long limit = 5'000'000);
// number of unitary similitudes in the residue image of tag, by row-by-row backtracking
long masked_group_order(const FqField& f, int n, SubgroupTag tag);
// every element of that image (same enumeration), used as an oracle
std::vector<FMat> masked_group_elements(const FqField& f, int n, SubgroupTag tag);

// smallest d > 0 with p inert in Q(sqrt(-d))
long default_inert_disc(long p);

// sum over U = {1} u {b + sqrt(-d)} of Lambda_p^exponent
Cyclo character_sum(long p, int exponent, bool include_identity, long d = 0);

enum class Center { Q, Omega };
Mat<QuadElem> center_matrix(Center c, long d);

// residue-level well-definedness of the section at the center: every x in the residue image of I'^H
// with c x c^-1 in the Siegel parabolic has Levi determinant in F_p
bool residue_support_check(long p, long d, Center c);
// every stride-th element c x c^-1 of that search (all of them lie in the Siegel parabolic)
std::vector<FMat> residue_parabolic_elements(long p, long d, Center c, size_t stride = 1);

}  // namespace pv
