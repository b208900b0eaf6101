#pragma once

#include <string>
#include <vector>

namespace qsn {

// One frame of the three-parameter field: iteration stage, numeral base, and
// gauge label. The distinguished elementary ancestor (the fixed external
// number representation that finite and one-way fields grow from) is the
// stage-0 frame with no base/gauge, written "0/R/C".
struct FrameId {
  int stage = 0;
  int base = 0;  // 0 marks the ancestor
  std::string gauge;

  static FrameId ancestor() { return FrameId{0, 0, ""}; }
  static FrameId frame(int stage, int base, std::string gauge);

  bool is_ancestor() const noexcept { return base == 0; }

  friend bool operator==(const FrameId& a, const FrameId& b) = default;
  friend auto operator<=>(const FrameId& a, const FrameId& b) = default;
};

// Text form "<stage>/<base>/<gauge>"; the ancestor reads "0/R/C".
FrameId parse_frame(const std::string& text);
std::string to_text(const FrameId& f);

enum class IterationScheme {
  finite,            // stages 0..n, stage 0 is the ancestor
  one_way_infinite,  // stages 0..inf, stage 0 is the ancestor
  two_way_infinite,  // all integer stages, no ancestor
  cyclic             // stage classes 0..n-1, no ancestor
};
std::string iteration_scheme_name(IterationScheme s);

// Answer to a visibility query. In the cyclic scheme every frame reaches
// every other, but a route that passes the wrap revisits what would be an
// ancestor in the unrolled reading; `wraps` flags those answers instead of
// picking a semantics for them.
struct VisibilityResult {
  bool visible = false;
  bool wraps = false;
};

using IterationPath = std::vector<FrameId>;

// The frame lattice itself, lazily queried. Each stage holds one frame per
// (base, gauge) choice, and every frame of one stage descends from every
// frame of the previous stage, so reachability is a pure stage comparison.
class FrameField {
public:
  static FrameField finite(int n, std::vector<int> bases,
                           std::vector<std::string> gauges);
  static FrameField one_way_infinite(std::vector<int> bases,
                                     std::vector<std::string> gauges);
  static FrameField two_way_infinite(std::vector<int> bases,
                                     std::vector<std::string> gauges);
  static FrameField cyclic(int n, std::vector<int> bases,
                           std::vector<std::string> gauges);

  IterationScheme scheme() const noexcept { return scheme_; }
  // Stage count for finite, period for cyclic, 0 for the infinite schemes.
  int period() const noexcept { return n_; }
  const std::vector<int>& bases() const noexcept { return bases_; }
  const std::vector<std::string>& gauges() const noexcept { return gauges_; }

  bool has_ancestor_frame() const noexcept;
  bool contains(const FrameId& f) const;

  // Observers see strictly descendant frames only: deeper stages along the
  // iteration direction. Ancestors and same-stage peers are invisible. In
  // the cyclic scheme everything is visible and answers that need the wrap
  // are flagged.
  VisibilityResult can_see(const FrameId& observer,
                           const FrameId& target) const;

  // All frames reachable in 1..depth iteration steps / the frames one step
  // up. The ancestor is the only frame with no parents; the infinite and
  // cyclic schemes have none such.
  std::vector<FrameId> descendants(const FrameId& f, int depth) const;
  std::vector<FrameId> parents(const FrameId& f) const;
  std::vector<FrameId> frames_at_stage(int stage) const;

  // Steps must follow the iteration direction one stage at a time (mod n in
  // the cyclic scheme); every frame must lie in the field.
  void validate_path(const IterationPath& path) const;

  // Completed turns around the cyclic scheme: floor(steps / n). Defined only
  // for cyclic fields.
  int winding_number(const IterationPath& path) const;

private:
  FrameField(IterationScheme scheme, int n, std::vector<int> bases,
             std::vector<std::string> gauges);

  IterationScheme scheme_;
  int n_;
  std::vector<int> bases_;
  std::vector<std::string> gauges_;
};

// Description files like
//   {"scheme": "cyclic", "n": 8, "bases": [2, 10], "gauges": ["g0", "g1"]}
// ("n" only for finite/cyclic).
FrameField field_from_json_text(const std::string& text);
std::string to_json_text(const FrameField& field);

}  // namespace qsn
