#pragma once

#include <optional>
#include <set>
#include <vector>

#include "genuskit/graph.hpp"
#include "genuskit/minor.hpp"
#include "genuskit/planarity.hpp"

namespace gk {

/// Flavour of a two-vertex gluing: the glued pair is an edge of the piece or
/// a nonedge.  Only a K33 piece has the choice; in K5 every pair is an edge.
enum class PairKind { edge, nonedge };

/// Building block of a glued Kuratowski family: a K5 or a K33, plus the pair
/// flavour when (and only when) the piece is glued on two shared vertices.
struct PieceKind {
  enum Kind { k5, k33 };
  Kind kind = k5;
  std::optional<PairKind> pair_kind;
};

bool operator==(const PieceKind& a, const PieceKind& b);
bool operator!=(const PieceKind& a, const PieceKind& b);
bool operator<(const PieceKind& a, const PieceKind& b);

PieceKind k5_piece();
PieceKind k33_piece();
PieceKind k33_piece(PairKind pk);

/// A glued Kuratowski family together with its construction plan.  `hubs`
/// holds the shared vertices (the identified vertices for arity 1 and 2, the
/// 3-side for arity 3).  piece_vertices[j] lists piece j in a fixed semantic
/// order: hubs lead their side, and a K33 piece lists one side then the
/// other.  For arity 3 every entry is the 3-side followed by one vertex of
/// the other side.
struct KuratowskiLayout {
  Graph graph;
  std::vector<Vertex> hubs;
  std::vector<std::vector<Vertex>> piece_vertices;
};

/// Builds the family of k pieces glued on i shared vertices, with
/// deterministic labels: hubs get 0..i-1, pieces take consecutive fresh ids.
/// Arity 0 is the disjoint union; arity 1 identifies one vertex per piece;
/// arity 2 identifies a pair per piece and keeps the pair a nonedge; arity 3
/// is the complete bipartite graph on k and 3 vertices (pieces ignored).
/// Throws input_error when the piece list or a pair flavour does not match
/// the arity.
KuratowskiLayout make_kuratowski_layout(int k, int i,
                                        const std::vector<PieceKind>& pieces);
Graph make_kuratowski(int k, int i, const std::vector<PieceKind>& pieces);

/// A minor model of a glued Kuratowski family inside some host, annotated
/// with the family's parameters so the pieces stay identifiable.
struct KuratowskiModel {
  int k = 1;
  int i = 0;
  std::vector<PieceKind> pieces;  // empty for arity 3
  KuratowskiLayout layout;        // the pattern realised by `model`
  MinorModel model;
};

/// Re-checks a model from scratch: the layout must match a fresh build of
/// the declared parameters and the minor model must validate against it.
bool validate_kuratowski_model(const Graph& host, const KuratowskiModel& m);

inline constexpr int kKuratowskiDetectCap = 14;
inline constexpr int kJunctionDetectCap = 12;
inline constexpr int kSigmaFreeCap = 10;

/// Searches the host for any family of k pieces glued on i vertices, trying
/// every piece mix in a fixed order (K5 before K33, edge flavour before
/// nonedge).  Throws budget_error when the host has more than
/// kKuratowskiDetectCap vertices.
std::optional<KuratowskiModel> detect_kuratowski_minor(const Graph& g, int k,
                                                       int i);

/// Per-piece evidence inside a JunctionWitness.  Exactly the arm matching
/// the junction arity is populated: a Kuratowski witness of the piece for
/// arities 0 and 1; for arity 2 a Kuratowski witness of the piece plus a
/// fresh boundary apex adjacent to both roots (apex id = fresh_id of the
/// induced piece); for arity 3 one interior neighbour per root, in root
/// order.
struct PieceEvidence {
  std::optional<KuratowskiWitness> nonplanar;
  std::optional<KuratowskiWitness> nonflat;
  Vertex apex = -1;
  std::vector<Vertex> contacts;
};

/// k subgraphs of a host that pairwise share exactly the i root vertices,
/// each piece nonplanar (arity 0, 1), not flat against the roots (arity 2),
/// or connected with an interior neighbour for every root (arity 3).
struct JunctionWitness {
  int k = 0;
  int i = 0;
  std::vector<Vertex> roots;             // sorted, size i
  std::vector<std::set<Vertex>> pieces;  // each contains all roots
  std::vector<PieceEvidence> evidence;   // parallel to pieces
};

/// Re-checks a witness from scratch: root and piece shape, exact pairwise
/// intersections, and every evidence arm via the planarity certifier.
bool validate_junction(const Graph& g, const JunctionWitness& w);

/// Exhaustive subgraph-level junction search: every root choice in
/// lexicographic order, minimal good piece interiors, first disjoint packing
/// in enumeration order.  Root choices are evaluated concurrently but the
/// earliest one with a witness always wins, so the result is deterministic.
/// Throws budget_error when the host has more than kJunctionDetectCap
/// vertices.
std::optional<JunctionWitness> detect_junction(const Graph& g, int k, int i);

/// Packing number of g against the apex set: the maximum number of
/// subgraphs that pairwise share only apex vertices, where a piece meeting
/// at most two apex vertices must be nonplanar and a piece meeting exactly
/// three must be connected with a nonempty connected remainder once the apex
/// set is removed.  Apex vertices absent from g are ignored.  Exhaustive;
/// throws budget_error when g has more than kSigmaFreeCap non-apex vertices.
int sigma(const std::set<Vertex>& x_set, const Graph& g);

/// Variant pinned at a vertex v outside the apex set: the maximum number of
/// nonplanar subgraphs through v, each meeting at most two apex vertices,
/// pairwise sharing only apex vertices and v.
int sigma_at(const std::set<Vertex>& x_set, Vertex v, const Graph& g);

/// Constructive extraction: a witness with 8k pieces yields a validated
/// model of some family of k pieces glued on j <= 3 vertices.  Nonplanar
/// pieces are mined with the exhaustive minor search (so piece bodies obey
/// its size cap); for arity 2 the pieces are paired and each pair union is
/// classified by which roots its obstruction needs; arity 3 contracts piece
/// interiors and therefore requires at least k pieces whose interiors stay
/// connected without the roots.  Throws input_error on a witness that does
/// not validate or whose piece count is not a positive multiple of eight.
KuratowskiModel junction_to_kuratowski(const Graph& g,
                                       const JunctionWitness& w);

/// Keeps k pieces of a single kind out of a model with at least 3k pieces,
/// picking the largest kind class (two-vertex gluings split K33 pieces
/// further by pair flavour, and three classes over 3k pieces still leave one
/// of size k).  Ties prefer K5, then the edge flavour.  The branch sets and
/// witnesses of the retained pieces are reused unchanged.
KuratowskiModel purify(const KuratowskiModel& m, int k);

}  // namespace gk
