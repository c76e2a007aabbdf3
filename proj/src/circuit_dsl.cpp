// Copyright 2026 The Ontic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Line-oriented circuit language. One declaration per line, '#' comments:
//
//   name demo
//   closed false
//   sys A : q2                      (q = quantum, c = classical, t = trivial)
//   node U : A -> A = kraus(H)      (single event with outcome "0")
//   node M : A -> A                 (events declared separately)
//   event M up = kraus(P0)
//   wire U.0 -> M.0
//   cond M on U                     (outcome k of U selects event k of M)
//   cond M on U {"0":[0],"1":[1]}   (explicit map)
//   cond A on $input
//
// Operators inside kraus(...) are either named constants or JSON matrix
// literals using the shared [re, im] scalar encoding.

#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ontic/circuit.hpp"
#include "ontic/error.hpp"

namespace ontic {

namespace {

ComplexMatrix named_matrix(std::string_view name) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  auto m = [](std::size_t rows, std::size_t cols,
              std::initializer_list<Complex> v) {
    ComplexMatrix out(rows, cols);
    std::size_t k = 0;
    for (Complex z : v) out.data()[k++] = z;
    return out;
  };
  if (name == "I") return ComplexMatrix::Identity(2, 2);
  if (name == "I4") return ComplexMatrix::Identity(4, 4);
  if (name == "H") return m(2, 2, {r, r, r, -r});
  if (name == "X") return m(2, 2, {0, 1, 1, 0});
  if (name == "Y") return m(2, 2, {0, -i, i, 0});
  if (name == "Z") return m(2, 2, {1, 0, 0, -1});
  if (name == "S") return m(2, 2, {1, 0, 0, i});
  if (name == "T") return m(2, 2, {1, 0, 0, std::exp(i * (M_PI / 4))});
  if (name == "P0") return m(2, 2, {1, 0, 0, 0});
  if (name == "P1") return m(2, 2, {0, 0, 0, 1});
  if (name == "CNOT") {
    return m(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
  }
  if (name == "CZ") {
    return m(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1});
  }
  if (name == "SWAP") {
    return m(4, 4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
  }
  if (name == "ket0") return m(2, 1, {1, 0});
  if (name == "ket1") return m(2, 1, {0, 1});
  if (name == "ketplus") return m(2, 1, {r, r});
  if (name == "ketminus") return m(2, 1, {r, -r});
  if (name == "bra0") return m(1, 2, {1, 0});
  if (name == "bra1") return m(1, 2, {0, 1});
  if (name == "braplus") return m(1, 2, {r, r});
  if (name == "braminus") return m(1, 2, {r, -r});
  return {};
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t number)
      : line_(line), number_(number) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, number_, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' ||
                                   line_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  std::size_t column() const { return pos_ + 1; }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '$' || c == '\'';
  }

  std::string ident() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && ident_char(line_[pos_])) ++pos_;
    if (start == pos_) fail("expected an identifier");
    return std::string(line_.substr(start, pos_ - start));
  }

  bool peek(char c) {
    skip_space();
    return pos_ < line_.size() && line_[pos_] == c;
  }

  bool peek_arrow() {
    skip_space();
    return line_.substr(pos_, 2) == "->";
  }

  void expect(std::string_view token) {
    skip_space();
    if (line_.substr(pos_, token.size()) != token) {
      fail(fmt::format("expected '{}'", token));
    }
    pos_ += token.size();
  }

  std::size_t number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < line_.size() &&
           std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return std::stoul(std::string(line_.substr(start, pos_ - start)));
  }

  /// Text up to the bracket matching the one at the cursor, inclusive.
  std::string_view balanced(char open, char close) {
    skip_space();
    if (!peek(open)) fail(fmt::format("expected '{}'", open));
    const std::size_t start = pos_;
    int depth = 0;
    for (; pos_ < line_.size(); ++pos_) {
      if (line_[pos_] == open) ++depth;
      if (line_[pos_] == close && --depth == 0) {
        ++pos_;
        return line_.substr(start, pos_ - start);
      }
    }
    fail(fmt::format("unbalanced '{}'", open));
  }

  std::string_view rest() {
    skip_space();
    auto out = line_.substr(pos_);
    pos_ = line_.size();
    return out;
  }

  std::vector<ComplexMatrix> kraus_list() {
    expect("kraus");
    expect("(");
    std::vector<ComplexMatrix> out;
    while (true) {
      skip_space();
      const std::size_t col = pos_;
      if (peek('[')) {
        const auto literal = balanced('[', ']');
        try {
          out.push_back(matrix_from_json(Json::parse(literal)));
        } catch (const Json::exception&) {
          pos_ = col;
          fail("malformed matrix literal");
        } catch (const FormatError& e) {
          pos_ = col;
          fail(e.what());
        }
      } else {
        const std::string name = ident();
        ComplexMatrix m = named_matrix(name);
        if (m.size() == 0) {
          pos_ = col;
          fail("unknown matrix name '" + name + "'");
        }
        out.push_back(std::move(m));
      }
      if (peek(',')) {
        expect(",");
        continue;
      }
      expect(")");
      return out;
    }
  }

  PortRef port() {
    PortRef ref;
    ref.node = ident();
    expect(".");
    ref.port = number();
    return ref;
  }

 private:
  std::string_view line_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

struct PendingCondition {
  std::size_t node;
  std::string source;
  std::size_t line;
};

}  // namespace

Circuit circuit_from_dsl(std::string_view text) {
  Circuit c;
  std::vector<PendingCondition> defaults;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    LineParser p(raw, number);
    if (p.at_end()) continue;
    const std::string keyword = p.ident();
    if (keyword == "name") {
      c.name = p.ident();
    } else if (keyword == "closed") {
      c.closed = p.at_end() ? true : p.ident() == "true";
    } else if (keyword == "open") {
      c.closed = false;
    } else if (keyword == "sys") {
      System s;
      s.label = p.ident();
      p.expect(":");
      const std::string type_code = p.ident();
      const char kind = type_code.empty() ? '?' : type_code[0];
      if (kind == 'q') {
        s.theory = Theory::kQuantum;
      } else if (kind == 'c') {
        s.theory = Theory::kClassical;
      } else if (kind == 't') {
        s.theory = Theory::kTrivial;
      } else {
        p.fail("system type must be q<dim>, c<dim> or t<dim>");
      }
      try {
        s.dim = type_code.size() > 1 ? std::stoul(type_code.substr(1)) : 0;
      } catch (const std::exception&) {
        s.dim = 0;
      }
      if (s.dim == 0) p.fail("system dimension must be positive");
      c.systems.push_back(std::move(s));
    } else if (keyword == "node") {
      Node n;
      n.label = p.ident();
      p.expect(":");
      while (!p.peek_arrow()) {
        if (p.at_end()) p.fail("expected '->'");
        if (p.peek(',')) {
          p.expect(",");
          continue;
        }
        n.inputs.push_back(p.ident());
      }
      p.expect("->");
      while (!p.at_end() && !p.peek('=')) {
        if (p.peek(',')) {
          p.expect(",");
          continue;
        }
        n.outputs.push_back(p.ident());
      }
      if (p.peek('=')) {
        p.expect("=");
        n.events.push_back({"0", p.kraus_list()});
      }
      c.nodes.push_back(std::move(n));
    } else if (keyword == "event") {
      const std::string label = p.ident();
      const auto idx = c.node_index(label);
      if (!idx) p.fail("event for undeclared node '" + label + "'");
      const std::string outcome = p.ident();
      p.expect("=");
      c.nodes[*idx].events.push_back({outcome, p.kraus_list()});
    } else if (keyword == "wire") {
      Wire w;
      w.from = p.port();
      p.expect("->");
      w.to = p.port();
      c.wires.push_back(std::move(w));
    } else if (keyword == "cond") {
      const std::string label = p.ident();
      const auto idx = c.node_index(label);
      if (!idx) p.fail("condition for undeclared node '" + label + "'");
      p.expect("on");
      const std::string source = p.ident();
      Condition cond{source, {}};
      if (p.peek('{')) {
        const auto literal = p.balanced('{', '}');
        try {
          const Json doc = Json::parse(literal);
          for (const auto& [key, value] : doc.items()) {
            cond.map.emplace(key, value.get<std::vector<std::size_t>>());
          }
        } catch (const Json::exception&) {
          p.fail("malformed condition map");
        }
      } else {
        defaults.push_back({*idx, source, number});
      }
      c.nodes[*idx].condition = std::move(cond);
    } else {
      p.fail("unknown declaration '" + keyword + "'");
    }
    if (!p.at_end()) p.fail("unexpected trailing text");
  }

  // Default maps pair the k-th outcome of the source with the k-th event.
  for (const auto& d : defaults) {
    Node& target = c.nodes[d.node];
    auto& map = target.condition->map;
    if (d.source == kInputSource) {
      for (std::size_t k = 0; k < target.events.size(); ++k) {
        map[std::to_string(k)] = {k};
      }
      continue;
    }
    const auto src = c.node_index(d.source);
    if (!src) throw ParseError("condition on undeclared node " + d.source, d.line, 1);
    const auto& source_events = c.nodes[*src].events;
    if (source_events.size() != target.events.size()) {
      throw ParseError(
          fmt::format("default condition needs {} and {} to have equally many "
                      "events",
                      d.source, target.label),
          d.line, 1);
    }
    for (std::size_t k = 0; k < source_events.size(); ++k) {
      map[source_events[k].outcome] = {k};
    }
  }
  if (c.name.empty()) c.name = "circuit";
  return c;
}

}  // namespace ontic
