// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "ponshare/topology.hpp"

namespace ponshare {

namespace {

constexpr NodeId kMaxNodes = NodeId{1} << 24;

std::optional<NodeKind> kind_from_token(std::string_view token) {
  if (token == "olt") return NodeKind::kOlt;
  if (token == "prn") return NodeKind::kPassiveRn;
  if (token == "arn") return NodeKind::kActiveRn;
  if (token == "onu") return NodeKind::kOnu;
  if (token == "ic-onu") return NodeKind::kIcOnu;
  return std::nullopt;
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

NodeId parse_id(std::string_view word, std::size_t line_no) {
  NodeId value = 0;
  const auto* end = word.data() + word.size();
  const auto [ptr, ec] = std::from_chars(word.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line_no, "bad node id '" + std::string(word) + "'");
  }
  if (value >= kMaxNodes) throw ParseError(line_no, "node id " + std::string(word) + " too large");
  return value;
}

}  // namespace

std::string_view kind_token(NodeKind kind) {
  switch (kind) {
    case NodeKind::kOlt: return "olt";
    case NodeKind::kPassiveRn: return "prn";
    case NodeKind::kActiveRn: return "arn";
    case NodeKind::kOnu: return "onu";
    case NodeKind::kIcOnu: return "ic-onu";
  }
  return "?";
}

std::string serialize_pon(const PonGraph& pon) {
  std::string out = "pon 1\n";
  out.reserve(out.size() + pon.node_count() * 24);
  for (NodeId id = 0; id < pon.node_count(); ++id) {
    out += "node ";
    out += std::to_string(id);
    out += ' ';
    out += kind_token(pon.kind(id));
    out += '\n';
  }
  for (const Fiber& f : pon.fibers()) {
    out += "edge ";
    out += std::to_string(f.parent);
    out += ' ';
    out += std::to_string(f.child);
    out += '\n';
  }
  return out;
}

PonGraph parse_pon(std::string_view text) {
  std::vector<std::optional<NodeKind>> kinds;
  std::vector<Fiber> fibers;
  bool have_header = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto words = split_words(line);
    if (words.empty()) continue;

    if (!have_header) {
      if (words.size() != 2 || words[0] != "pon") {
        throw ParseError(line_no, "expected header 'pon 1'");
      }
      if (words[1] != "1") {
        throw ParseError(line_no, "unsupported format version '" + std::string(words[1]) + "'");
      }
      have_header = true;
      continue;
    }

    if (words[0] == "node") {
      if (words.size() != 3) throw ParseError(line_no, "expected 'node <id> <kind>'");
      const NodeId id = parse_id(words[1], line_no);
      const auto kind = kind_from_token(words[2]);
      if (!kind) throw ParseError(line_no, "unknown node kind '" + std::string(words[2]) + "'");
      if (id >= kinds.size()) kinds.resize(std::size_t{id} + 1);
      if (kinds[id]) throw ParseError(line_no, "duplicate node " + std::to_string(id));
      kinds[id] = *kind;
    } else if (words[0] == "edge") {
      if (words.size() != 3) throw ParseError(line_no, "expected 'edge <parent-id> <child-id>'");
      fibers.push_back({parse_id(words[1], line_no), parse_id(words[2], line_no)});
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(words[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'pon 1'");

  std::vector<NodeKind> dense;
  dense.reserve(kinds.size());
  for (std::size_t id = 0; id < kinds.size(); ++id) {
    if (!kinds[id]) {
      throw StructuralError("invalid PON: node ids must be dense; " + std::to_string(id) +
                            " is missing");
    }
    dense.push_back(*kinds[id]);
  }
  return PonGraph(std::move(dense), std::move(fibers));
}

PonGraph load_pon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pon(buf.str());
}

void save_pon(const PonGraph& pon, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << serialize_pon(pon);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace ponshare
