// Command-line front end: mine, verify, bench, gen, oracle.
//
// Exit codes: 0 success, 1 data error, 2 usage error, 3 verification or
// invariant failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "topic/database.hpp"
#include "topic/miner.hpp"
#include "topic/oracle.hpp"
#include "topic/report.hpp"

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  topic::UtilityDatabase db;
  topic::report::DatasetInfo info;
};

Loaded load(const std::string& path, bool lenient) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw topic::DataError(topic::DataErrorKind::io, 0,
                           "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  topic::ParseOptions options;
  options.tu_policy =
      lenient ? topic::TuPolicy::lenient : topic::TuPolicy::strict;
  options.on_warning = [&](std::size_t, const std::string& msg) {
    std::cerr << "warning: " << path << ": " << msg << '\n';
  };
  return {topic::parse_spmf(text, options),
          {path, topic::report::fingerprint(text)}};
}

void print_mine(const Loaded& data, const topic::MinerConfig& config,
                const topic::MineResult& result, const std::string& format) {
  if (format == "json") {
    std::cout << topic::report::mine_json(data.info, data.db, config, result)
                     .dump(2)
              << '\n';
    return;
  }
  if (format == "csv") {
    std::cout << "rank,items,utility\n";
    const auto list = topic::report::itemsets_json(data.db, result.top_k);
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::cout << i + 1 << ',';
      const auto& items = list[i]["items"];
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (j) std::cout << ' ';
        std::cout << items[j].get<topic::ItemLabel>();
      }
      std::cout << ',' << list[i]["utility"].get<topic::Utility>() << '\n';
    }
    return;
  }
  std::cout << topic::report::itemsets_text(data.db, result.top_k);
  const auto& s = result.stats;
  std::cout << "final_min_util: " << result.final_min_util << '\n'
            << "candidates: " << s.candidates << '\n'
            << "projections: " << s.projections << '\n'
            << "merges: " << s.merges << '\n'
            << "peak_entries: " << s.peak_entries << '\n'
            << "runtime_ms: " << s.runtime_ms << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact top-k high-utility itemset mining with negative utilities"};
  app.require_subcommand(1);

  const std::vector<std::string> formats{"text", "json", "csv"};

  // mine
  std::string mine_input;
  std::size_t mine_k = 0;
  std::string mine_variant = "full";
  std::string mine_format = "text";
  bool mine_lenient = false;
  auto* mine_cmd = app.add_subcommand("mine", "Mine the top-k itemsets");
  mine_cmd->add_option("--input", mine_input, "SPMF utility file")->required();
  mine_cmd->add_option("--k", mine_k, "Number of itemsets")
      ->required()
      ->check(CLI::PositiveNumber);
  mine_cmd->add_option("--variant", mine_variant, "Ablation variant")
      ->check(CLI::IsMember({"full", "merge-only", "subtree-only", "none"}));
  mine_cmd->add_option("--format", mine_format)->check(CLI::IsMember(formats));
  mine_cmd->add_flag("--lenient", mine_lenient,
                     "Recompute mismatching TU fields instead of failing");

  // oracle
  std::string oracle_input;
  std::size_t oracle_k = 0;
  std::string oracle_format = "text";
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Exhaustive top-k (at most 24 items)");
  oracle_cmd->add_option("--input", oracle_input)->required();
  oracle_cmd->add_option("--k", oracle_k)->required()->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--format", oracle_format)
      ->check(CLI::IsMember({"text", "json"}));

  // verify
  std::string verify_input;
  std::vector<std::size_t> verify_ks{1, 3, 5, 10, 20};
  std::size_t verify_seeds = 0;
  std::uint64_t verify_seed_start = 1;
  std::string verify_format = "text";
  auto* verify_cmd = app.add_subcommand(
      "verify", "Compare every variant with the exhaustive oracle");
  verify_cmd->add_option("--input", verify_input, "SPMF utility file");
  verify_cmd->add_option("--k", verify_ks, "Comma-separated k values")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seeds", verify_seeds,
                         "Number of random desk-scale databases");
  verify_cmd->add_option("--seed-start", verify_seed_start);
  verify_cmd->add_option("--format", verify_format)
      ->check(CLI::IsMember({"text", "json"}));

  // bench
  std::string bench_input;
  std::vector<std::size_t> bench_ks;
  std::string bench_format = "csv";
  auto* bench_cmd =
      app.add_subcommand("bench", "Run all ablation variants and compare");
  bench_cmd->add_option("--input", bench_input)->required();
  bench_cmd->add_option("--k", bench_ks, "Comma-separated k values")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--format", bench_format)
      ->check(CLI::IsMember({"csv", "json"}));

  // gen
  topic::SyntheticParams gen;
  gen.transactions = 1000;
  gen.items = 50;
  gen.avg_len = 8;
  gen.max_utility = 9;
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic database");
  gen_cmd->add_option("--transactions", gen.transactions);
  gen_cmd->add_option("--items", gen.items);
  gen_cmd->add_option("--avg-len", gen.avg_len);
  gen_cmd->add_option("--min-utility", gen.min_utility);
  gen_cmd->add_option("--max-utility", gen.max_utility);
  gen_cmd->add_option("--negative-fraction", gen.negative_fraction);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--output", gen_output, "Output path ('-' for stdout)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*mine_cmd) {
      const Loaded data = load(mine_input, mine_lenient);
      const auto config = topic::MinerConfig::for_variant(
          *topic::parse_variant(mine_variant), mine_k);
      print_mine(data, config, topic::mine(data.db, config), mine_format);
      return 0;
    }

    if (*oracle_cmd) {
      const Loaded data = load(oracle_input, false);
      const auto result = topic::oracle::enumerate_topk(data.db, oracle_k);
      if (oracle_format == "json") {
        nlohmann::json out{
            {"schema_version", topic::report::kSchemaVersion},
            {"command", "oracle"},
            {"dataset", topic::report::dataset_json(data.info, data.db)},
            {"k", oracle_k},
            {"top_k", topic::report::itemsets_json(data.db, result.top_k)}};
        std::cout << out.dump(2) << '\n';
      } else {
        std::cout << topic::report::itemsets_text(data.db, result.top_k);
      }
      return 0;
    }

    if (*verify_cmd) {
      if (verify_input.empty() && verify_seeds == 0) {
        throw UsageError("verify needs --input and/or --seeds");
      }
      topic::report::VerifyReport report;
      if (!verify_input.empty()) {
        const Loaded data = load(verify_input, false);
        topic::report::verify_database(data.db, verify_input, verify_ks,
                                       report);
      }
      for (std::size_t i = 0; i < verify_seeds; ++i) {
        const std::uint64_t seed = verify_seed_start + i;
        const auto db =
            topic::generate_synthetic(topic::report::campaign_params(seed));
        topic::report::verify_database(db, "seed:" + std::to_string(seed),
                                       verify_ks, report);
      }
      if (verify_format == "json") {
        std::cout << topic::report::verify_json(report).dump(2) << '\n';
      } else {
        for (const auto& c : report.cases) {
          if (c.passed) continue;
          std::cout << "FAIL " << c.database << " k=" << c.k << " variant="
                    << topic::variant_name(c.variant) << '\n';
          for (const auto& line : c.diff) std::cout << "  " << line << '\n';
        }
        std::cout << (report.passed() ? "PASS" : "FAIL") << ": "
                  << report.cases.size() - report.failures() << '/'
                  << report.cases.size() << " cases agree with the oracle\n";
      }
      return report.passed() ? 0 : kExitVerify;
    }

    if (*bench_cmd) {
      const Loaded data = load(bench_input, false);
      const auto rows = topic::report::run_bench(
          data.db, bench_ks, topic::report::bench_threads_from_env());
      if (bench_format == "json") {
        std::cout << topic::report::bench_json(data.info, data.db, rows).dump(2)
                  << '\n';
      } else {
        std::cout << topic::report::bench_csv(rows);
      }
      const auto violations = topic::report::bench_violations(rows);
      for (const auto& v : violations) std::cerr << "violation: " << v << '\n';
      return violations.empty() ? 0 : kExitVerify;
    }

    if (*gen_cmd) {
      const auto db = topic::generate_synthetic(gen);
      const std::string text = topic::write_spmf(db);
      if (gen_output == "-") {
        std::cout << text;
      } else {
        std::ofstream out(gen_output, std::ios::binary);
        out << text;
        if (!out) {
          throw topic::DataError(topic::DataErrorKind::io, 0,
                                 "cannot write '" + gen_output + "'");
        }
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const topic::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == topic::DataErrorKind::invalid_params ? kExitUsage
                                                            : kExitData;
  } catch (const topic::oracle::TooManyItems& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
