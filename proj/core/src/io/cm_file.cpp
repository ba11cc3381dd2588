#include "gsteer/io/cm_file.hpp"

#include <charconv>
#include <cmath>
#include <optional>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gsteer/error.hpp"
#include "gsteer/io/model_file.hpp"

namespace gsteer::io {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_words(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Index of xxpp position j in xpxp order.
Eigen::Index xpxp_index(Eigen::Index j, Eigen::Index n) { return j < n ? 2 * j : 2 * (j - n) + 1; }

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  // Next line that is neither blank nor a comment.
  std::optional<std::string_view> next() {
    while (pos_ < text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      const std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_;
      const auto t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      return line;
    }
    return std::nullopt;
  }

  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

double parse_number(const Token& t, std::size_t line) {
  double v = 0.0;
  const char* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError(fmt::format("'{}' is not a finite number", t.text), line, t.column);
  }
  return v;
}

}  // namespace

CmDocument parse_cm(std::string_view text) {
  Reader reader(text);
  auto line = reader.next();
  if (!line) throw ParseError("empty covariance-matrix file", reader.line() + 1, 1);
  {
    const auto words = split_words(*line);
    if (words.size() != 2 || words[0].text != kCmMagic) {
      throw ParseError(fmt::format("expected header '{} {}'", kCmMagic, kCmSchemaVersion),
                       reader.line(), 1);
    }
    if (words[1].text != std::to_string(kCmSchemaVersion)) {
      throw ParseError(fmt::format("unsupported format version '{}'", words[1].text),
                       reader.line(), words[1].column);
    }
  }

  std::optional<std::size_t> n_modes;
  QuadratureOrdering ordering = QuadratureOrdering::kXpxp;
  double scale = 1.0;
  std::vector<std::string> labels;
  std::size_t labels_line = 0;
  std::string provenance;
  for (;;) {
    line = reader.next();
    if (!line) throw ParseError("missing 'matrix' section", reader.line() + 1, 1);
    const auto words = split_words(*line);
    const auto& key = words.front();
    const std::size_t ln = reader.line();
    if (key.text == "matrix") {
      if (words.size() != 1) throw ParseError("unexpected text after 'matrix'", ln, words[1].column);
      break;
    }
    if (key.text == "provenance") {
      provenance = std::string(trim(line->substr(key.column - 1 + key.text.size())));
      continue;
    }
    if (key.text == "labels") {
      for (std::size_t i = 1; i < words.size(); ++i) labels.emplace_back(words[i].text);
      labels_line = ln;
      continue;
    }
    if (words.size() != 2) throw ParseError(fmt::format("'{}' takes one value", key.text), ln, key.column);
    const auto& value = words[1];
    if (key.text == "n_modes") {
      std::size_t n = 0;
      const char* end = value.text.data() + value.text.size();
      const auto [ptr, ec] = std::from_chars(value.text.data(), end, n);
      if (ec != std::errc() || ptr != end || n == 0 || n > 4096) {
        throw ParseError(fmt::format("invalid mode count '{}'", value.text), ln, value.column);
      }
      n_modes = n;
    } else if (key.text == "ordering") {
      if (value.text == "xpxp") {
        ordering = QuadratureOrdering::kXpxp;
      } else if (value.text == "xxpp") {
        ordering = QuadratureOrdering::kXxpp;
      } else {
        throw ParseError(fmt::format("unknown ordering '{}'", value.text), ln, value.column);
      }
    } else if (key.text == "normalization") {
      if (value.text == "vacuum=1") {
        scale = 1.0;
      } else if (value.text == "vacuum=0.5") {
        scale = 2.0;
      } else {
        throw ParseError(fmt::format("unknown normalization '{}'", value.text), ln, value.column);
      }
    } else {
      throw ParseError(fmt::format("unknown key '{}'", key.text), ln, key.column);
    }
  }
  if (!n_modes) throw ParseError("'n_modes' must precede 'matrix'", reader.line(), 1);
  if (!labels.empty() && labels.size() != *n_modes) {
    throw ParseError(fmt::format("{} labels for {} modes", labels.size(), *n_modes),
                     labels_line, 1);
  }

  const auto dim = static_cast<Eigen::Index>(2 * *n_modes);
  Matrix body(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    line = reader.next();
    if (!line) {
      throw ParseError(fmt::format("matrix truncated: expected {} rows, got {}", dim, r),
                       reader.line() + 1, 1);
    }
    const auto words = split_words(*line);
    if (static_cast<Eigen::Index>(words.size()) != dim) {
      throw ParseError(fmt::format("row {} has {} entries, expected {}", r + 1, words.size(), dim),
                       reader.line(), 1);
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      body(r, c) = scale * parse_number(words[static_cast<std::size_t>(c)], reader.line());
    }
  }
  if (auto extra = reader.next()) {
    throw ParseError("unexpected content after the matrix", reader.line(), 1);
  }

  Matrix entries = body;
  if (ordering == QuadratureOrdering::kXxpp) {
    const auto n = static_cast<Eigen::Index>(*n_modes);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) entries(xpxp_index(r, n), xpxp_index(c, n)) = body(r, c);
    }
  }
  return {CovarianceMatrix(std::move(entries), std::move(labels)), std::move(provenance), ordering};
}

CmDocument read_cm_file(const std::filesystem::path& path) {
  return parse_cm(read_text_file(path));
}

CmDocument load_cm_file(const std::filesystem::path& path, const Tolerances& tol) {
  CmDocument doc = read_cm_file(path);
  require_valid(doc.cm, tol);
  return doc;
}

std::string format_cm(const CovarianceMatrix& cm, std::string_view provenance,
                      QuadratureOrdering ordering) {
  std::string out = fmt::format("{} {}\n", kCmMagic, kCmSchemaVersion);
  out += fmt::format("n_modes {}\n", cm.n_modes());
  out += fmt::format("ordering {}\n", ordering == QuadratureOrdering::kXpxp ? "xpxp" : "xxpp");
  out += "normalization vacuum=1\n";
  if (cm.has_labels()) out += fmt::format("labels {}\n", fmt::join(cm.labels(), " "));
  std::string prov(provenance);
  for (char& ch : prov) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  prov = std::string(trim(prov));
  if (!prov.empty()) out += fmt::format("provenance {}\n", prov);
  out += "matrix\n";
  const Matrix& e = cm.entries();
  const Eigen::Index dim = e.rows();
  const auto n = static_cast<Eigen::Index>(cm.n_modes());
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double v = ordering == QuadratureOrdering::kXpxp ? e(r, c)
                                                             : e(xpxp_index(r, n), xpxp_index(c, n));
      if (c > 0) out += ' ';
      out += fmt::format("{}", v);
    }
    out += '\n';
  }
  return out;
}

void write_cm_file(const std::filesystem::path& path, const CovarianceMatrix& cm,
                   std::string_view provenance) {
  write_text_file(path, format_cm(cm, provenance));
}

}  // namespace gsteer::io
