#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topic {

/// Dense item identifier, contiguous in [0, item_count).
using ItemId = std::uint32_t;

/// Raw item label as it appears in an input file.
using ItemLabel = std::int64_t;

/// Utilities are exact signed integers (currency units).
using Utility = std::int64_t;

enum class ItemSign : std::uint8_t { positive, negative };

struct ItemUtility {
  ItemId item;
  Utility utility;

  friend bool operator==(const ItemUtility&, const ItemUtility&) = default;
};

/// One transaction. `items` has no duplicates, is sorted ascending by the
/// owning database's item order, and `tu` is the exact sum of the utilities.
struct Transaction {
  std::uint64_t tid = 0;
  std::vector<ItemUtility> items;
  Utility tu = 0;
};

enum class DataErrorKind {
  malformed_line,
  tu_mismatch,
  mixed_sign_item,
  zero_utility,
  duplicate_item,
  invalid_params,
  io,
};

class DataError : public std::runtime_error {
 public:
  DataError(DataErrorKind kind, std::size_t line, const std::string& what)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  DataErrorKind kind() const noexcept { return kind_; }
  /// 1-based input line, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  DataErrorKind kind_;
  std::size_t line_;
};

/// Immutable utility transaction database.
///
/// Every item has a global sign: all occurrences of a positive item carry
/// utility > 0 and all occurrences of a negative item carry utility < 0.
/// Construction validates this along with the per-transaction invariants.
class UtilityDatabase {
 public:
  UtilityDatabase() = default;

  /// Signs are derived from the occurrences; items that never occur are
  /// classified positive. Throws DataError on any invariant violation.
  UtilityDatabase(std::vector<Transaction> transactions,
                  std::vector<ItemLabel> labels);

  /// Same, with an explicit sign per item (used when an item may have been
  /// filtered out of every transaction but its class must be kept).
  UtilityDatabase(std::vector<Transaction> transactions,
                  std::vector<ItemLabel> labels, std::vector<ItemSign> signs);

  std::span<const Transaction> transactions() const { return transactions_; }
  std::size_t size() const { return transactions_.size(); }
  bool empty() const { return transactions_.empty(); }

  std::size_t item_count() const { return labels_.size(); }
  ItemLabel label(ItemId item) const { return labels_[item]; }
  std::span<const ItemLabel> labels() const { return labels_; }
  std::optional<ItemId> find_label(ItemLabel label) const;

  ItemSign sign(ItemId item) const { return signs_[item]; }
  bool is_positive(ItemId item) const {
    return signs_[item] == ItemSign::positive;
  }
  /// Positive items (rho), ascending by id.
  std::span<const ItemId> positive_items() const { return positive_; }
  /// Negative items (eta), ascending by id.
  std::span<const ItemId> negative_items() const { return negative_; }

 private:
  void validate_and_classify(bool derive_signs);

  std::vector<Transaction> transactions_;
  std::vector<ItemLabel> labels_;
  std::vector<ItemSign> signs_;
  std::vector<ItemId> positive_;
  std::vector<ItemId> negative_;
};

/// RTU(T): sum of the positive utilities of a transaction.
Utility positive_utility(const Transaction& t);

// ---------------------------------------------------------------------------
// SPMF utility format: `i1 i2 ... im:TU:u1 u2 ... um`, one transaction per
// line. Lines starting with '#' or '@' are skipped, as are blank lines.

enum class TuPolicy {
  strict,   ///< a declared TU that differs from the sum is an error
  lenient,  ///< the TU is recomputed and a warning is emitted
};

struct ParseOptions {
  TuPolicy tu_policy = TuPolicy::strict;
  std::function<void(std::size_t line, const std::string& message)> on_warning;
};

/// Dense ids are assigned in ascending raw-label order; tids are assigned
/// in file order starting at 1.
UtilityDatabase parse_spmf(std::string_view text,
                           const ParseOptions& options = {});
UtilityDatabase read_spmf_file(const std::string& path,
                               const ParseOptions& options = {});

/// Writes transactions in stored order with raw labels restored.
std::string write_spmf(const UtilityDatabase& db);

// ---------------------------------------------------------------------------

struct ItemSummary {
  ItemId item = 0;
  Utility utility = 0;  ///< sum of U(x, T) over all transactions
  Utility twu = 0;      ///< sum of TU(T) over transactions containing x
  Utility rtwu = 0;     ///< sum of RTU(T) over transactions containing x
  std::size_t support = 0;
  ItemSign sign = ItemSign::positive;
};

/// One summary per item, indexed by ItemId.
std::vector<ItemSummary> compute_item_summaries(const UtilityDatabase& db);

// ---------------------------------------------------------------------------

struct SyntheticParams {
  std::size_t transactions = 0;
  std::size_t items = 0;
  std::size_t avg_len = 1;
  /// Magnitude range of generated utilities; negative items get the
  /// negated magnitude. Must satisfy 1 <= min_utility <= max_utility.
  Utility min_utility = 1;
  Utility max_utility = 10;
  double negative_fraction = 0.0;
  std::uint64_t seed = 0;
};

/// Deterministic for a fixed seed. Item labels are 1..items. Exactly
/// round(negative_fraction * items) items are negative, chosen up front.
/// Throws DataError(invalid_params) on bad parameters.
UtilityDatabase generate_synthetic(const SyntheticParams& params);

}  // namespace topic
