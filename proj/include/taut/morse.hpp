#ifndef TAUT_MORSE_HPP
#define TAUT_MORSE_HPP

#include <cstdint>
#include <vector>

#include "taut/bruhat.hpp"
#include "taut/rootsys.hpp"

namespace taut::morse
{

/// A point of the Cartan subspace with the simple roots vanishing on it.
struct ChamberPoint
{
  QVector coords;
  std::vector<int> theta;
};

/// Builds a ChamberPoint, computing theta from the simple roots.
ChamberPoint make_point(rootsys::RootSystem const &rs, QVector coords);

/// No reduced root vanishes at x.
bool is_regular(rootsys::RootSystem const &rs, QVector const &x);

/// Every positive root is >= 0 at x.
bool is_dominant(rootsys::RootSystem const &rs, QVector const &x);

/// One critical point w p of L_q on K p per coset w W_p.
struct Coset
{
  int representative = 0;   // minimal-length element of the coset
  QVector point;            // w p
  int stabilizer_order = 0; // |W_p|
};

/// Cosets W/W_p, ordered by representative. Throws ZeroPoint for p = 0.
std::vector<Coset> critical_cosets(rootsys::WeylGroup const &group, ChamberPoint const &p);

struct Wall
{
  int root = 0;         // reduced positive root index
  int multiplicity = 0; // dim of the barred root space
  Rational param;       // crossing parameter on the segment, in (0, 1)
};

struct CycleWord
{
  std::vector<Wall> walls;   // in crossing order from q towards w p
  int base_coset = 0;        // minimal representative of w W_p
  QVector target;            // w p

  int dimension() const;
};

/// Singular hyperplanes met by the open segment (from, to), ordered by the
/// crossing parameter. Throws NonGenericSegment when two distinct walls are
/// met at the same point. Hyperplanes containing an endpoint are not
/// crossings.
std::vector<Wall> segment_crossings(rootsys::RootSystem const &rs, QVector const &from,
                                    QVector const &to);

/// Walls crossed from q to w p. Throws QNotRegular for singular q. Checks
/// internally that reflecting w p back through the crossed walls lands in the
/// closed chamber of q (so w and s_k...s_1 share a W_p coset when p lies in
/// that closed chamber) and throws std::logic_error otherwise.
CycleWord crossing_sequence(rootsys::WeylGroup const &group, ChamberPoint const &q, int w,
                            ChamberPoint const &p);

/// crossing_sequence for every coset of critical_cosets, in the same order.
std::vector<CycleWord> coset_words(rootsys::WeylGroup const &group, ChamberPoint const &q,
                                   ChamberPoint const &p);

int morse_index(rootsys::WeylGroup const &group, ChamberPoint const &q, int w,
                ChamberPoint const &p);

/// A nearby regular rational point: q plus a seeded perturbation of size
/// about 1e-3 per coordinate.
QVector perturb(rootsys::RootSystem const &rs, QVector const &q, std::uint64_t seed);

/// Random point of the open positive chamber with small rational simple-root
/// values, seeded.
QVector random_positive_point(rootsys::RootSystem const &rs, std::uint64_t seed);

struct CosetCorrespondence
{
  int coset = 0;         // minimal representative of w W_p
  int w_u = 0;           // s_1 ... s_k, group index
  std::vector<int> walls;
  bool in_W_u = false;
  bool coset_ok = false; // w_u^{-1} lies in w W_p
  int index = 0;
  int cell_dimension = 0;
};

struct CorrespondenceReport
{
  std::vector<CosetCorrespondence> cosets;
  bool bijection = false;
  bool multisets_equal = false;
  bruhat::Polynomial morse_polynomial;
  bruhat::Polynomial poincare;

  bool ok() const;
};

/// Checks the Bott-Samelson / Bruhat correspondence. Requires p dominant with
/// vanishing set theta (PointNotDominant, InvalidTheta) and q in the open
/// positive chamber (QNotInPositiveChamber). p = 0 is allowed here.
CorrespondenceReport verify_bruhat_correspondence(rootsys::WeylGroup const &group,
                                                  bruhat::ThetaSubset const &theta,
                                                  ChamberPoint const &q, ChamberPoint const &p);

} // namespace taut::morse

#endif // TAUT_MORSE_HPP
