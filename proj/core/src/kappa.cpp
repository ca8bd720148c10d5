#include "tabfix/kappa.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "tabfix/errors.hpp"
#include "tabfix/text.hpp"

namespace tabfix {

std::string_view label_name(std::size_t label) {
  if (label < kCategoryCount) return category_name(kAllCategories[label]);
  if (label == kNoErrorLabel) return "NO_ERROR";
  return "?";
}

std::size_t parse_label(std::string_view s) {
  if (auto c = parse_category(s)) return static_cast<std::size_t>(*c);
  std::string k;
  for (char c : text::trim(s)) k.push_back(c == ' ' || c == '-' ? '_' : c);
  if (text::iequals(k, "NO_ERROR") || text::iequals(k, "NOERROR")) return kNoErrorLabel;
  throw SchemaError("labels", "unknown label '" + std::string(s) + "'");
}

RatingMatrix::RatingMatrix(std::size_t items, std::size_t categories)
    : items_(items), categories_(categories), counts_(items * categories, 0) {}

std::size_t RatingMatrix::row_sum(std::size_t item) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < categories_; ++j) n += at(item, j);
  return n;
}

void RatingMatrix::add_row(std::span<const std::size_t> row) {
  if (items_ == 0 && categories_ == 0) categories_ = row.size();
  if (row.size() != categories_)
    throw std::invalid_argument("rating row has " + std::to_string(row.size()) +
                                " columns, expected " + std::to_string(categories_));
  counts_.insert(counts_.end(), row.begin(), row.end());
  ++items_;
}

KappaResult fleiss_kappa_detail(const RatingMatrix& m) {
  if (m.items() == 0 || m.categories() == 0) throw std::invalid_argument("empty rating matrix");
  const std::size_t n = m.row_sum(0);
  if (n < 2) throw std::invalid_argument("fleiss kappa needs at least two raters per item");
  std::vector<std::size_t> col(m.categories(), 0);
  std::size_t agree_pairs = 0;
  for (std::size_t i = 0; i < m.items(); ++i) {
    if (m.row_sum(i) != n)
      throw std::invalid_argument("item " + std::to_string(i) + " has " +
                                  std::to_string(m.row_sum(i)) + " ratings, expected " +
                                  std::to_string(n));
    for (std::size_t j = 0; j < m.categories(); ++j) {
      std::size_t c = m.at(i, j);
      agree_pairs += c * (c - (c > 0 ? 1 : 0));
      col[j] += c;
    }
  }
  const double N = static_cast<double>(m.items());
  const double nn = static_cast<double>(n);
  const std::size_t all = m.items() * n;

  KappaResult r;
  r.raters = n;
  r.pa = static_cast<double>(agree_pairs) / (N * nn * (nn - 1));
  for (std::size_t c : col) {
    double p = static_cast<double>(c) / static_cast<double>(all);
    r.pe += p * p;
  }
  bool single_category = std::any_of(col.begin(), col.end(), [&](std::size_t c) { return c == all; });
  if (single_category) {
    r.pe = 1.0;
    if (agree_pairs != m.items() * n * (n - 1))
      throw DegenerateAgreement("all ratings fall in one category but items disagree");
    r.kappa = 1.0;
    return r;
  }
  if (agree_pairs == m.items() * n * (n - 1)) {
    r.pa = 1.0;
    r.kappa = 1.0;
    return r;
  }
  r.kappa = (r.pa - r.pe) / (1.0 - r.pe);
  return r;
}

double fleiss_kappa(const RatingMatrix& m) { return fleiss_kappa_detail(m).kappa; }

RatingMatrix parse_rating_matrix(std::string_view input) {
  RatingMatrix m;
  std::size_t line_no = 0;
  bool first = true;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    auto nl = input.find('\n', pos);
    std::string_view line = input.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? input.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string cleaned(line);
    bool has_comma = cleaned.find(',') != std::string::npos;
    std::vector<std::string> fields;
    if (has_comma) {
      std::stringstream ss(cleaned);
      std::string f;
      while (std::getline(ss, f, ',')) fields.emplace_back(text::trim(f));
      if (!cleaned.empty() && cleaned.back() == ',') fields.emplace_back();
    } else {
      for (auto f : text::split_ws(cleaned)) fields.emplace_back(f);
    }
    if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;

    std::vector<std::size_t> row;
    bool numeric = true;
    for (const auto& f : fields) {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc() || p != f.data() + f.size()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (!first) throw SchemaError("line " + std::to_string(line_no), "non-numeric rating count");
      m.category_names = fields;
      first = false;
      continue;
    }
    if (!m.category_names.empty() && row.size() != m.category_names.size())
      throw SchemaError("line " + std::to_string(line_no),
                        "expected " + std::to_string(m.category_names.size()) + " counts");
    try {
      m.add_row(row);
    } catch (const std::invalid_argument& e) {
      throw SchemaError("line " + std::to_string(line_no), e.what());
    }
    first = false;
  }
  if (m.items() == 0) throw SchemaError("", "rating matrix has no rows");
  return m;
}

RatingMatrix rating_matrix(std::span<const LabeledItem> items, std::size_t raters) {
  RatingMatrix m(0, 0);
  for (std::size_t j = 0; j < kLabelCount; ++j) m.category_names.emplace_back(label_name(j));
  for (const auto& item : items) {
    if (item.labels.size() != raters) throw ArityMismatch(item.item_id, raters, item.labels.size());
    std::vector<std::size_t> row(kLabelCount, 0);
    for (const auto& l : item.labels) ++row[parse_label(l)];
    m.add_row(row);
  }
  return m;
}

std::size_t ConfusionMatrix::total(std::size_t row) const {
  std::size_t n = all_agree[row];
  for (auto c : off[row]) n += c;
  return n;
}

ConfusionMatrix confusion_matrix(std::span<const LabeledItem> items, std::size_t raters) {
  ConfusionMatrix m;
  m.raters = raters;
  for (const auto& item : items) {
    if (item.labels.size() != raters || raters == 0)
      throw ArityMismatch(item.item_id, raters, item.labels.size());
    std::vector<std::size_t> labels;
    std::array<std::size_t, kLabelCount> count{};
    for (const auto& l : item.labels) {
      labels.push_back(parse_label(l));
      ++count[labels.back()];
    }
    std::size_t best = *std::max_element(count.begin(), count.end());
    std::size_t row = labels.front();
    for (std::size_t l : labels)
      if (count[l] == best) {
        row = l;
        break;
      }
    if (best == raters) {
      ++m.all_agree[row];
      continue;
    }
    for (std::size_t l : labels)
      if (l != row) ++m.off[row][l];
  }
  return m;
}

std::string render_confusion(const ConfusionMatrix& m) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head = {"", "ALL_AGREE"};
  for (std::size_t j = 0; j < kLabelCount; ++j) head.emplace_back(label_name(j));
  head.emplace_back("TOTAL");
  rows.push_back(head);
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    std::vector<std::string> r = {std::string(label_name(i)), std::to_string(m.all_agree[i])};
    for (std::size_t j = 0; j < kLabelCount; ++j) r.push_back(std::to_string(m.off[i][j]));
    r.push_back(std::to_string(m.total(i)));
    rows.push_back(std::move(r));
  }
  std::vector<std::size_t> w(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) line += "  ";
      std::string cell = r[i];
      std::string fill(w[i] - cell.size(), ' ');
      line += i == 0 ? cell + fill : fill + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

}  // namespace tabfix
