#include "topic/database.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace topic {

namespace {

std::string line_context(std::size_t line) {
  return "line " + std::to_string(line) + ": ";
}

}  // namespace

UtilityDatabase::UtilityDatabase(std::vector<Transaction> transactions,
                                 std::vector<ItemLabel> labels)
    : transactions_(std::move(transactions)), labels_(std::move(labels)) {
  signs_.assign(labels_.size(), ItemSign::positive);
  validate_and_classify(true);
}

UtilityDatabase::UtilityDatabase(std::vector<Transaction> transactions,
                                 std::vector<ItemLabel> labels,
                                 std::vector<ItemSign> signs)
    : transactions_(std::move(transactions)),
      labels_(std::move(labels)),
      signs_(std::move(signs)) {
  if (signs_.size() != labels_.size()) {
    throw DataError(DataErrorKind::invalid_params, 0,
                    "sign table size does not match item count");
  }
  validate_and_classify(false);
}

void UtilityDatabase::validate_and_classify(bool derive_signs) {
  const std::size_t n = labels_.size();
  // 0 = unseen, 1 = seen positive, 2 = seen negative
  std::vector<std::uint8_t> seen(n, 0);
  for (const Transaction& t : transactions_) {
    Utility sum = 0;
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      const auto [item, u] = t.items[i];
      if (item >= n) {
        throw DataError(DataErrorKind::malformed_line, 0,
                        "transaction " + std::to_string(t.tid) +
                            " references unknown item " + std::to_string(item));
      }
      if (i > 0 && t.items[i - 1].item >= item) {
        throw DataError(DataErrorKind::duplicate_item, 0,
                        "transaction " + std::to_string(t.tid) +
                            " items are not strictly ascending");
      }
      if (u == 0) {
        throw DataError(DataErrorKind::zero_utility, 0,
                        "transaction " + std::to_string(t.tid) +
                            " has a zero utility for item " +
                            std::to_string(labels_[item]));
      }
      const std::uint8_t s = u > 0 ? 1 : 2;
      if (seen[item] != 0 && seen[item] != s) {
        throw DataError(DataErrorKind::mixed_sign_item, 0,
                        "item " + std::to_string(labels_[item]) +
                            " occurs with both signs");
      }
      seen[item] = s;
      if (!derive_signs && (s == 1) != (signs_[item] == ItemSign::positive)) {
        throw DataError(DataErrorKind::mixed_sign_item, 0,
                        "item " + std::to_string(labels_[item]) +
                            " contradicts its declared sign");
      }
      sum += u;
    }
    if (sum != t.tu) {
      throw DataError(DataErrorKind::tu_mismatch, 0,
                      "transaction " + std::to_string(t.tid) +
                          " declares TU " + std::to_string(t.tu) +
                          " but its utilities sum to " + std::to_string(sum));
    }
  }
  for (ItemId item = 0; item < n; ++item) {
    if (derive_signs && seen[item] == 2) signs_[item] = ItemSign::negative;
    (signs_[item] == ItemSign::positive ? positive_ : negative_)
        .push_back(item);
  }
}

std::optional<ItemId> UtilityDatabase::find_label(ItemLabel label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<ItemId>(it - labels_.begin());
}

Utility positive_utility(const Transaction& t) {
  Utility sum = 0;
  for (const auto& iu : t.items) {
    if (iu.utility > 0) sum += iu.utility;
  }
  return sum;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
std::vector<T> parse_numbers(std::string_view field, std::size_t line) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos < field.size()) {
    while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\t')) {
      ++pos;
    }
    if (pos >= field.size()) break;
    T value{};
    const char* first = field.data() + pos;
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} ||
        (ptr != last && *ptr != ' ' && *ptr != '\t')) {
      throw DataError(DataErrorKind::malformed_line, line,
                      line_context(line) + "invalid number in '" +
                          std::string(field) + "'");
    }
    out.push_back(value);
    pos = static_cast<std::size_t>(ptr - field.data());
  }
  return out;
}

struct RawTransaction {
  std::size_t line;
  std::vector<ItemLabel> labels;
  std::vector<Utility> utilities;
  Utility tu;
};

}  // namespace

UtilityDatabase parse_spmf(std::string_view text, const ParseOptions& options) {
  std::vector<RawTransaction> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#' || line[first] == '@') continue;

    const auto c1 = line.find(':');
    const auto c2 =
        c1 == std::string_view::npos ? c1 : line.find(':', c1 + 1);
    if (c2 == std::string_view::npos ||
        line.find(':', c2 + 1) != std::string_view::npos) {
      throw DataError(DataErrorKind::malformed_line, line_no,
                      line_context(line_no) + "expected 'items:TU:utilities'");
    }
    RawTransaction r{line_no, parse_numbers<ItemLabel>(line.substr(0, c1), line_no),
                     parse_numbers<Utility>(line.substr(c2 + 1), line_no), 0};
    const auto tu = parse_numbers<Utility>(line.substr(c1 + 1, c2 - c1 - 1),
                                           line_no);
    if (tu.size() != 1 || r.labels.empty() ||
        r.labels.size() != r.utilities.size()) {
      throw DataError(DataErrorKind::malformed_line, line_no,
                      line_context(line_no) + "field count mismatch");
    }
    r.tu = tu.front();
    raw.push_back(std::move(r));
  }

  std::vector<ItemLabel> labels;
  for (const auto& r : raw) {
    labels.insert(labels.end(), r.labels.begin(), r.labels.end());
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  std::vector<std::int8_t> sign(labels.size(), 0);
  std::vector<Transaction> transactions;
  transactions.reserve(raw.size());
  std::uint64_t tid = 0;
  for (const auto& r : raw) {
    Transaction t;
    t.tid = ++tid;
    Utility sum = 0;
    for (std::size_t i = 0; i < r.labels.size(); ++i) {
      const auto id = static_cast<ItemId>(
          std::lower_bound(labels.begin(), labels.end(), r.labels[i]) -
          labels.begin());
      const Utility u = r.utilities[i];
      if (u == 0) {
        throw DataError(DataErrorKind::zero_utility, r.line,
                        line_context(r.line) + "item " +
                            std::to_string(r.labels[i]) + " has utility 0");
      }
      const std::int8_t s = u > 0 ? 1 : -1;
      if (sign[id] != 0 && sign[id] != s) {
        throw DataError(DataErrorKind::mixed_sign_item, r.line,
                        line_context(r.line) + "item " +
                            std::to_string(r.labels[i]) +
                            " occurs with both positive and negative utility");
      }
      sign[id] = s;
      t.items.push_back({id, u});
      sum += u;
    }
    std::sort(t.items.begin(), t.items.end(),
              [](const ItemUtility& a, const ItemUtility& b) {
                return a.item < b.item;
              });
    for (std::size_t i = 1; i < t.items.size(); ++i) {
      if (t.items[i].item == t.items[i - 1].item) {
        throw DataError(DataErrorKind::duplicate_item, r.line,
                        line_context(r.line) + "item " +
                            std::to_string(labels[t.items[i].item]) +
                            " appears twice");
      }
    }
    if (sum != r.tu) {
      const std::string msg = line_context(r.line) + "declared TU " +
                              std::to_string(r.tu) + " but utilities sum to " +
                              std::to_string(sum);
      if (options.tu_policy == TuPolicy::strict) {
        throw DataError(DataErrorKind::tu_mismatch, r.line, msg);
      }
      if (options.on_warning) options.on_warning(r.line, msg);
    }
    t.tu = sum;
    transactions.push_back(std::move(t));
  }
  return UtilityDatabase(std::move(transactions), std::move(labels));
}

UtilityDatabase read_spmf_file(const std::string& path,
                               const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(DataErrorKind::io, 0, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spmf(buffer.str(), options);
}

std::string write_spmf(const UtilityDatabase& db) {
  std::string out;
  for (const Transaction& t : db.transactions()) {
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(db.label(t.items[i].item));
    }
    out += ':';
    out += std::to_string(t.tu);
    out += ':';
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(t.items[i].utility);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<ItemSummary> compute_item_summaries(const UtilityDatabase& db) {
  std::vector<ItemSummary> out(db.item_count());
  for (ItemId item = 0; item < out.size(); ++item) {
    out[item].item = item;
    out[item].sign = db.sign(item);
  }
  for (const Transaction& t : db.transactions()) {
    const Utility rtu = positive_utility(t);
    for (const auto& [item, u] : t.items) {
      ItemSummary& s = out[item];
      s.utility += u;
      s.twu += t.tu;
      s.rtwu += rtu;
      ++s.support;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

UtilityDatabase generate_synthetic(const SyntheticParams& p) {
  auto invalid = [](const std::string& what) {
    return DataError(DataErrorKind::invalid_params, 0, what);
  };
  if (p.items == 0 && p.transactions > 0) throw invalid("items must be >= 1");
  if (p.avg_len == 0) throw invalid("avg_len must be >= 1");
  if (p.transactions > 0 && p.avg_len > p.items) {
    throw invalid("avg_len must not exceed the number of items");
  }
  if (p.min_utility < 1 || p.min_utility > p.max_utility) {
    throw invalid("utility range must satisfy 1 <= min <= max");
  }
  if (!(p.negative_fraction >= 0.0 && p.negative_fraction < 1.0)) {
    throw invalid("negative_fraction must be in [0, 1)");
  }

  std::mt19937_64 rng(p.seed);
  std::vector<ItemLabel> labels(p.items);
  std::iota(labels.begin(), labels.end(), ItemLabel{1});

  std::vector<ItemSign> signs(p.items, ItemSign::positive);
  const auto negatives = static_cast<std::size_t>(
      std::llround(p.negative_fraction * static_cast<double>(p.items)));
  {
    std::vector<ItemId> ids(p.items);
    std::iota(ids.begin(), ids.end(), ItemId{0});
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t i = 0; i < negatives && i < ids.size(); ++i) {
      signs[ids[i]] = ItemSign::negative;
    }
  }

  std::poisson_distribution<std::size_t> extra(
      static_cast<double>(p.avg_len - 1));
  std::uniform_int_distribution<Utility> magnitude(p.min_utility,
                                                   p.max_utility);
  std::vector<ItemId> pool(p.items);
  std::iota(pool.begin(), pool.end(), ItemId{0});

  std::vector<Transaction> transactions;
  transactions.reserve(p.transactions);
  for (std::size_t n = 0; n < p.transactions; ++n) {
    const std::size_t len = std::min(p.items, 1 + extra(rng));
    // partial Fisher-Yates over the shared pool
    for (std::size_t i = 0; i < len; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, p.items - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    Transaction t;
    t.tid = n + 1;
    t.items.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
      const ItemId item = pool[i];
      Utility u = magnitude(rng);
      if (signs[item] == ItemSign::negative) u = -u;
      t.items.push_back({item, u});
      t.tu += u;
    }
    std::sort(t.items.begin(), t.items.end(),
              [](const ItemUtility& a, const ItemUtility& b) {
                return a.item < b.item;
              });
    transactions.push_back(std::move(t));
  }
  return UtilityDatabase(std::move(transactions), std::move(labels),
                         std::move(signs));
}

}  // namespace topic
