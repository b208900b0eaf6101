#include "qsn/frames.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

#include <json.hpp>

#include "qsn/error.hpp"

namespace qsn {

namespace {

int parse_int_field(const std::string& text, const char* what) {
  int value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw DomainError(errc::bad_frame,
                      std::string(what) + " is not an integer: '" + text + "'");
  return value;
}

int positive_mod(int value, int n) {
  const int r = value % n;
  return r < 0 ? r + n : r;
}

}  // namespace

FrameId FrameId::frame(int stage, int base, std::string gauge) {
  if (base < 2)
    throw DomainError(errc::bad_frame,
                      "frame base must be at least 2, got " +
                          std::to_string(base));
  if (gauge.empty() || gauge.find('/') != std::string::npos)
    throw DomainError(errc::bad_frame,
                      "gauge label must be nonempty and free of '/'");
  return FrameId{stage, base, std::move(gauge)};
}

FrameId parse_frame(const std::string& text) {
  if (text == "0/R/C") return FrameId::ancestor();
  const std::size_t a = text.find('/');
  const std::size_t b = a == std::string::npos ? a : text.find('/', a + 1);
  if (b == std::string::npos || text.find('/', b + 1) != std::string::npos)
    throw DomainError(errc::bad_frame,
                      "frame id must read '<stage>/<base>/<gauge>': '" + text +
                          "'");
  return FrameId::frame(parse_int_field(text.substr(0, a), "stage"),
                        parse_int_field(text.substr(a + 1, b - a - 1), "base"),
                        text.substr(b + 1));
}

std::string to_text(const FrameId& f) {
  if (f.is_ancestor()) return "0/R/C";
  return std::to_string(f.stage) + "/" + std::to_string(f.base) + "/" +
         f.gauge;
}

std::string iteration_scheme_name(IterationScheme s) {
  switch (s) {
    case IterationScheme::finite: return "finite";
    case IterationScheme::one_way_infinite: return "one_way_infinite";
    case IterationScheme::two_way_infinite: return "two_way_infinite";
    case IterationScheme::cyclic: return "cyclic";
  }
  return "finite";
}

FrameField::FrameField(IterationScheme scheme, int n, std::vector<int> bases,
                       std::vector<std::string> gauges)
    : scheme_(scheme), n_(n), bases_(std::move(bases)),
      gauges_(std::move(gauges)) {
  if (bases_.empty())
    throw DomainError(errc::bad_frame, "field needs at least one base");
  if (gauges_.empty())
    throw DomainError(errc::bad_frame, "field needs at least one gauge");
  for (const int k : bases_)
    if (k < 2)
      throw DomainError(errc::bad_frame,
                        "field base must be at least 2, got " +
                            std::to_string(k));
  for (const std::string& g : gauges_)
    if (g.empty() || g.find('/') != std::string::npos)
      throw DomainError(errc::bad_frame,
                        "gauge label must be nonempty and free of '/'");
  std::sort(bases_.begin(), bases_.end());
  bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
  std::sort(gauges_.begin(), gauges_.end());
  gauges_.erase(std::unique(gauges_.begin(), gauges_.end()), gauges_.end());
}

FrameField FrameField::finite(int n, std::vector<int> bases,
                              std::vector<std::string> gauges) {
  if (n < 1)
    throw DomainError(errc::bad_frame,
                      "finite scheme needs at least one iteration");
  return FrameField(IterationScheme::finite, n, std::move(bases),
                    std::move(gauges));
}

FrameField FrameField::one_way_infinite(std::vector<int> bases,
                                        std::vector<std::string> gauges) {
  return FrameField(IterationScheme::one_way_infinite, 0, std::move(bases),
                    std::move(gauges));
}

FrameField FrameField::two_way_infinite(std::vector<int> bases,
                                        std::vector<std::string> gauges) {
  return FrameField(IterationScheme::two_way_infinite, 0, std::move(bases),
                    std::move(gauges));
}

FrameField FrameField::cyclic(int n, std::vector<int> bases,
                              std::vector<std::string> gauges) {
  if (n < 1)
    throw DomainError(errc::bad_frame,
                      "cyclic scheme needs at least one stage class");
  return FrameField(IterationScheme::cyclic, n, std::move(bases),
                    std::move(gauges));
}

bool FrameField::has_ancestor_frame() const noexcept {
  return scheme_ == IterationScheme::finite ||
         scheme_ == IterationScheme::one_way_infinite;
}

bool FrameField::contains(const FrameId& f) const {
  if (f.is_ancestor()) return has_ancestor_frame() && f.stage == 0;
  if (!std::binary_search(bases_.begin(), bases_.end(), f.base)) return false;
  if (!std::binary_search(gauges_.begin(), gauges_.end(), f.gauge))
    return false;
  switch (scheme_) {
    case IterationScheme::finite: return f.stage >= 1 && f.stage <= n_;
    case IterationScheme::one_way_infinite: return f.stage >= 1;
    case IterationScheme::two_way_infinite: return true;
    case IterationScheme::cyclic: return f.stage >= 0 && f.stage < n_;
  }
  return false;
}

VisibilityResult FrameField::can_see(const FrameId& observer,
                                     const FrameId& target) const {
  if (!contains(observer))
    throw DomainError(errc::bad_frame,
                      "observer frame " + to_text(observer) +
                          " is not in the field");
  if (!contains(target))
    throw DomainError(errc::bad_frame,
                      "target frame " + to_text(target) +
                          " is not in the field");
  if (scheme_ == IterationScheme::cyclic)
    return VisibilityResult{true, target.stage <= observer.stage};
  return VisibilityResult{target.stage > observer.stage, false};
}

std::vector<FrameId> FrameField::frames_at_stage(int stage) const {
  const bool ancestor_stage = has_ancestor_frame() && stage == 0;
  if (ancestor_stage) return {FrameId::ancestor()};
  const bool in_range =
      scheme_ == IterationScheme::finite
          ? stage >= 1 && stage <= n_
          : scheme_ == IterationScheme::one_way_infinite
                ? stage >= 1
                : scheme_ == IterationScheme::two_way_infinite ||
                      (stage >= 0 && stage < n_);
  if (!in_range)
    throw DomainError(errc::bad_frame, "no stage " + std::to_string(stage) +
                                           " in this scheme");
  std::vector<FrameId> out;
  out.reserve(bases_.size() * gauges_.size());
  for (const int k : bases_)
    for (const std::string& g : gauges_) out.push_back(FrameId{stage, k, g});
  return out;
}

std::vector<FrameId> FrameField::descendants(const FrameId& f,
                                             int depth) const {
  if (!contains(f))
    throw DomainError(errc::bad_frame,
                      "frame " + to_text(f) + " is not in the field");
  if (depth < 1)
    throw DomainError(errc::bad_frame, "descendant depth must be positive");
  std::vector<FrameId> out;
  if (scheme_ == IterationScheme::cyclic) {
    const int classes = std::min(depth, n_);
    for (int step = 1; step <= classes; ++step) {
      const auto plane = frames_at_stage(positive_mod(f.stage + step, n_));
      out.insert(out.end(), plane.begin(), plane.end());
    }
  } else {
    const int last = scheme_ == IterationScheme::finite
                         ? std::min(f.stage + depth, n_)
                         : f.stage + depth;
    for (int stage = f.stage + 1; stage <= last; ++stage) {
      const auto plane = frames_at_stage(stage);
      out.insert(out.end(), plane.begin(), plane.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FrameId> FrameField::parents(const FrameId& f) const {
  if (!contains(f))
    throw DomainError(errc::bad_frame,
                      "frame " + to_text(f) + " is not in the field");
  switch (scheme_) {
    case IterationScheme::finite:
    case IterationScheme::one_way_infinite:
      if (f.is_ancestor()) return {};
      return frames_at_stage(f.stage - 1);
    case IterationScheme::two_way_infinite:
      return frames_at_stage(f.stage - 1);
    case IterationScheme::cyclic:
      return frames_at_stage(positive_mod(f.stage - 1, n_));
  }
  return {};
}

void FrameField::validate_path(const IterationPath& path) const {
  if (path.empty())
    throw DomainError(errc::bad_frame, "path needs at least one frame");
  for (const FrameId& f : path)
    if (!contains(f))
      throw DomainError(errc::bad_frame,
                        "path frame " + to_text(f) + " is not in the field");
  for (std::size_t i = 1; i < path.size(); ++i) {
    const int expect = scheme_ == IterationScheme::cyclic
                           ? positive_mod(path[i - 1].stage + 1, n_)
                           : path[i - 1].stage + 1;
    if (path[i].stage != expect)
      throw DomainError(errc::bad_frame,
                        "path step " + std::to_string(i) +
                            " does not advance one stage");
  }
}

int FrameField::winding_number(const IterationPath& path) const {
  if (scheme_ != IterationScheme::cyclic)
    throw DomainError(errc::bad_frame,
                      "winding numbers need a cyclic scheme");
  validate_path(path);
  return static_cast<int>((path.size() - 1) / static_cast<std::size_t>(n_));
}

FrameField field_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(errc::bad_frame,
                      std::string("field description is not valid JSON: ") +
                          e.what());
  }
  try {
    const std::string scheme = j.at("scheme").get<std::string>();
    const std::vector<int> bases = j.at("bases").get<std::vector<int>>();
    const std::vector<std::string> gauges =
        j.at("gauges").get<std::vector<std::string>>();
    if (scheme == "finite")
      return FrameField::finite(j.at("n").get<int>(), bases, gauges);
    if (scheme == "one_way_infinite")
      return FrameField::one_way_infinite(bases, gauges);
    if (scheme == "two_way_infinite")
      return FrameField::two_way_infinite(bases, gauges);
    if (scheme == "cyclic")
      return FrameField::cyclic(j.at("n").get<int>(), bases, gauges);
    throw DomainError(errc::bad_frame, "unknown scheme '" + scheme + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(errc::bad_frame,
                      std::string("field description is incomplete: ") +
                          e.what());
  }
}

std::string to_json_text(const FrameField& field) {
  nlohmann::ordered_json j;
  j["scheme"] = iteration_scheme_name(field.scheme());
  if (field.scheme() == IterationScheme::finite ||
      field.scheme() == IterationScheme::cyclic)
    j["n"] = field.period();
  j["bases"] = field.bases();
  j["gauges"] = field.gauges();
  return j.dump(2);
}

}  // namespace qsn
