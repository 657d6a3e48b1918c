#include "baire/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <nlohmann/json.hpp>

#include "baire/error.hpp"

namespace baire {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (l.exponent != 1 && l.exponent != -1) {
      throw Error(ErrorKind::InvalidArgument, "letter exponent must be +1 or -1");
    }
    if (l.is_constant() && l.id == 0) {
      throw Error(ErrorKind::InvalidArgument, "constant label 0 is not a label");
    }
  }
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

std::size_t Word::variable_bound() const {
  std::size_t bound = 0;
  for (const auto& l : letters_) {
    if (l.is_variable()) bound = std::max<std::size_t>(bound, l.id + 1);
  }
  return bound;
}

std::size_t Word::occurrences(std::uint32_t index) const {
  return static_cast<std::size_t>(std::count_if(letters_.begin(), letters_.end(), [&](const Letter& l) {
    return l.is_variable() && l.id == index;
  }));
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  Word parse() {
    std::vector<Letter> out;
    skip_space();
    if (pos_ == text_.size()) return Word{};
    if (text_.substr(pos_) == "1") return Word{};
    while (true) {
      skip_space();
      parse_factor(out);
      skip_space();
      if (pos_ == text_.size()) break;
      if (text_[pos_] != '*') fail("expected '*'");
      ++pos_;
    }
    return Word(std::move(out));
  }

 private:
  void parse_factor(std::vector<Letter>& out) {
    if (pos_ >= text_.size()) fail("unexpected end of word");
    const char head = text_[pos_];
    if (head == '1') {
      ++pos_;
      return;
    }
    Letter::Kind kind;
    if (head == 'x') {
      kind = Letter::Kind::Variable;
    } else if (head == 'c') {
      kind = Letter::Kind::Constant;
    } else {
      fail("expected 'x' or 'c'");
    }
    ++pos_;
    const long id = parse_int(false);
    if (kind == Letter::Kind::Constant && id == 0) fail("constant label must be >= 1");
    long exponent = 1;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      exponent = parse_int(true);
      if (exponent == 0) fail("exponent 0 is not allowed");
    }
    const int sign = exponent < 0 ? -1 : 1;
    for (long k = 0; k < std::abs(exponent); ++k) {
      out.push_back(Letter{kind, static_cast<std::uint32_t>(id), sign});
    }
  }

  long parse_int(bool allow_sign) {
    bool negative = false;
    if (allow_sign && pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    long value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    if (value > 1'000'000) fail("number too large");
    return negative ? -value : value;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError,
                "word parse error at offset " + std::to_string(pos_) + ": " + msg + " in '" +
                    std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).parse(); }

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& l = w.letters()[i];
    if (i > 0) out += " * ";
    out += l.is_variable() ? 'x' : 'c';
    out += std::to_string(l.id);
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

Word normal_form(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const auto& l : w.letters()) {
    if (l.is_constant() && l.id == kIdentity) continue;
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

bool has_adjacent_constants(const Word& w) {
  const auto& ls = w.letters();
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (ls[i - 1].is_constant() && ls[i].is_constant()) return true;
  }
  return false;
}

void EqSystem::validate() const {
  auto check = [&](const Word& w) {
    if (w.variable_bound() > var_count) {
      throw Error(ErrorKind::InvalidArgument,
                  "word '" + to_string(w) + "' uses a variable >= var_count " + std::to_string(var_count));
    }
  };
  for (const auto& w : equations) check(w);
  for (const auto& w : inequations) check(w);
}

LabelSet EqSystem::constants() const {
  LabelSet out;
  auto collect = [&](const Word& w) {
    for (const auto& l : w.letters()) {
      if (l.is_constant()) out.insert(l.id);
    }
  };
  for (const auto& w : equations) collect(w);
  for (const auto& w : inequations) collect(w);
  return out;
}

void to_json(nlohmann::json& j, const Word& w) { j = to_string(w); }

void from_json(const nlohmann::json& j, Word& w) { w = parse_word(j.get<std::string>()); }

void to_json(nlohmann::json& j, const EqSystem& s) {
  j = nlohmann::json{{"vars", s.var_count}, {"equations", s.equations}, {"inequations", s.inequations}};
}

void from_json(const nlohmann::json& j, EqSystem& s) {
  s = EqSystem{};
  if (j.contains("equations")) s.equations = j.at("equations").get<std::vector<Word>>();
  if (j.contains("inequations")) s.inequations = j.at("inequations").get<std::vector<Word>>();
  std::size_t bound = 0;
  for (const auto& w : s.equations) bound = std::max(bound, w.variable_bound());
  for (const auto& w : s.inequations) bound = std::max(bound, w.variable_bound());
  s.var_count = j.contains("vars") ? j.at("vars").get<std::size_t>() : bound;
  s.validate();
}

}  // namespace baire
