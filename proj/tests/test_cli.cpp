#include <doctest.h>

#include <sstream>

#include "test_util.hpp"

using testutil::run_cli;

namespace {

std::string mini_csv() { return testutil::source_dir() + "/data/mini/mini.csv"; }
std::string mock_table() { return testutil::source_dir() + "/data/mini/mock_table.tsv"; }
std::string assets_flag() { return "--assets " + testutil::asset_dir() + " "; }

} // namespace

TEST_CASE("cli: split reproduces the 7936/1985 cut on a 9921-row file") {
    testutil::TempDir tmp;
    std::ostringstream csv;
    csv << "id,text,labels\n";
    for (int i = 0; i < 9921; ++i) csv << "t" << i << ",text " << i << ",none\n";
    testutil::write_file(tmp.file("big.csv"), csv.str());

    auto result = run_cli("split --data " + tmp.file("big.csv") +
                          " --ratio 0.8 --seed 7 --out " + tmp.file("out"));
    CHECK(result.exit_code == 0);

    auto count_rows = [](const std::string& path) {
        std::string text = testutil::read_file(path);
        return testutil::count_occurrences(text, "\n") - 1; // minus header
    };
    CHECK(count_rows(tmp.file("out/train.csv")) == 7936);
    CHECK(count_rows(tmp.file("out/valid.csv")) == 1985);
}

TEST_CASE("cli: eda writes the two csv reports") {
    testutil::TempDir tmp;
    auto result = run_cli(assets_flag() + "eda --data " + mini_csv() + " --k 5 --out " +
                          tmp.file("eda"));
    CHECK(result.exit_code == 0);
    std::string dist = testutil::read_file(tmp.file("eda/label_distribution.csv"));
    CHECK(dist.find("label,count") == 0);
    CHECK(dist.find("side-effect,20") != std::string::npos);
    std::string terms = testutil::read_file(tmp.file("eda/top_terms.csv"));
    CHECK(terms.find("term,count") == 0);
    // 6 rows: header + k
    CHECK(testutil::count_occurrences(terms, "\n") == 6);
}

TEST_CASE("cli: eda --terms-only on an unlabeled dataset writes only top terms") {
    testutil::TempDir tmp;
    testutil::write_file(tmp.file("un.csv"), "id,text\nu1,vaccine doubts again\n");
    auto result = run_cli(assets_flag() + "eda --data " + tmp.file("un.csv") +
                          " --unlabeled --terms-only --out " + tmp.file("eda"));
    CHECK(result.exit_code == 0);
    CHECK(testutil::read_file(tmp.file("eda/top_terms.csv")).find("term,count") == 0);
    std::ifstream dist(tmp.file("eda/label_distribution.csv"));
    CHECK_FALSE(dist.good());
}

TEST_CASE("cli: train, predict, eval round-trip on the mini corpus") {
    testutil::TempDir tmp;
    auto split = run_cli("split --data " + mini_csv() + " --ratio 0.8 --seed 7 --out " +
                         tmp.file("s"));
    REQUIRE(split.exit_code == 0);

    auto train = run_cli(assets_flag() + "train --data " + tmp.file("s/train.csv") +
                         " --method svm --seed 5 --out " + tmp.file("model.vxm"));
    REQUIRE_MESSAGE(train.exit_code == 0, train.output);
    CHECK(testutil::read_file(tmp.file("model.vxm.manifest.json")).find("\"method\": \"svm\"") !=
          std::string::npos);

    auto predict = run_cli(assets_flag() + "predict --model " + tmp.file("model.vxm") +
                           " --data " + tmp.file("s/valid.csv") + " --out " +
                           tmp.file("run.csv"));
    REQUIRE_MESSAGE(predict.exit_code == 0, predict.output);

    // run files row counts match the input dataset
    std::string run_text = testutil::read_file(tmp.file("run.csv"));
    std::string valid_text = testutil::read_file(tmp.file("s/valid.csv"));
    CHECK(testutil::count_occurrences(run_text, "\n") ==
          testutil::count_occurrences(valid_text, "\n"));

    auto eval = run_cli("eval --run " + tmp.file("run.csv") + " --gold " +
                        tmp.file("s/valid.csv") + " --out " + tmp.file("report.csv"));
    REQUIRE_MESSAGE(eval.exit_code == 0, eval.output);
    CHECK(eval.output.find("macro") != std::string::npos);
    CHECK(testutil::read_file(tmp.file("report.csv")).find("class,P,R,F1") == 0);
}

TEST_CASE("cli: classifier chain and naive bayes methods round-trip through bundles") {
    testutil::TempDir tmp;
    auto split = run_cli("split --data " + mini_csv() + " --ratio 0.8 --seed 7 --out " +
                         tmp.file("s"));
    REQUIRE(split.exit_code == 0);

    for (const std::string method : {"cc", "mnb"}) {
        auto train = run_cli(assets_flag() + "train --data " + tmp.file("s/train.csv") +
                             " --method " + method + " --seed 7 --out " +
                             tmp.file(method + ".vxm"));
        REQUIRE_MESSAGE(train.exit_code == 0, train.output);
        auto predict = run_cli(assets_flag() + "predict --model " + tmp.file(method + ".vxm") +
                               " --data " + tmp.file("s/valid.csv") + " --out " +
                               tmp.file(method + "_run.csv"));
        REQUIRE_MESSAGE(predict.exit_code == 0, predict.output);
        auto eval = run_cli("eval --run " + tmp.file(method + "_run.csv") + " --gold " +
                            tmp.file("s/valid.csv") + " --jaccard macro");
        REQUIRE_MESSAGE(eval.exit_code == 0, eval.output);
        CHECK(eval.output.find("jaccard_macro_labels") != std::string::npos);
    }
}

TEST_CASE("cli: predict accepts unlabeled datasets") {
    testutil::TempDir tmp;
    auto train = run_cli(assets_flag() + "train --data " + mini_csv() +
                         " --method svm --seed 7 --out " + tmp.file("m.vxm"));
    REQUIRE_MESSAGE(train.exit_code == 0, train.output);

    testutil::write_file(tmp.file("un.csv"),
                         "id,text\nu1,this jab is pointless and needless\n"
                         "u2,seizure and clot reports everywhere\n");
    auto predict = run_cli(assets_flag() + "predict --model " + tmp.file("m.vxm") +
                           " --data " + tmp.file("un.csv") + " --unlabeled --out " +
                           tmp.file("run.csv"));
    REQUIRE_MESSAGE(predict.exit_code == 0, predict.output);
    std::string run = testutil::read_file(tmp.file("run.csv"));
    CHECK(run.find("u1,") != std::string::npos);
    CHECK(run.find("u2,") != std::string::npos);
}

TEST_CASE("cli: eval of a run equal to gold prints macro f1 = 1") {
    testutil::TempDir tmp;
    testutil::write_file(tmp.file("gold.csv"),
                         "id,text,labels\nt1,a,pharma\nt2,b,\"rushed political\"\n");
    testutil::write_file(tmp.file("run.csv"), "id,labels\nt2,\"rushed political\"\nt1,pharma\n");
    auto result = run_cli("eval --run " + tmp.file("run.csv") + " --gold " +
                          tmp.file("gold.csv"));
    CHECK(result.exit_code == 0);
    // per-class rows for the occurring labels show 1.0000 across the board
    CHECK(result.output.find("pharma") != std::string::npos);
    CHECK(result.output.find("1.0000") != std::string::npos);
    CHECK(result.output.find("jaccard_samples = 1") != std::string::npos);
}

TEST_CASE("cli: llm-run with the mock backend is deterministic and total") {
    testutil::TempDir tmp;
    const std::string common = assets_flag() + "llm-run --data " + mini_csv() +
                               " --train " + mini_csv() + " --backend mock --mock-table " +
                               mock_table() + " --exemplars 58 --seed 3 ";
    auto first = run_cli(common + "--jobs 4 --cache " + tmp.file("cache.jsonl") + " --out " +
                         tmp.file("run1.csv"));
    REQUIRE_MESSAGE(first.exit_code == 0, first.output);
    CHECK(first.output.find("n=240") != std::string::npos);
    CHECK(first.output.find("failures=0") != std::string::npos);

    auto second = run_cli(common + "--jobs 4 --cache " + tmp.file("cache.jsonl") + " --out " +
                          tmp.file("run2.csv"));
    REQUIRE_MESSAGE(second.exit_code == 0, second.output);
    CHECK(second.output.find("backend_calls=0") != std::string::npos);

    CHECK(testutil::read_file(tmp.file("run1.csv")) ==
          testutil::read_file(tmp.file("run2.csv")));
    CHECK(testutil::read_file(tmp.file("run1.reasoning.csv")) ==
          testutil::read_file(tmp.file("run2.reasoning.csv")));

    // and eval accepts the run file as-is
    auto eval = run_cli("eval --run " + tmp.file("run1.csv") + " --gold " + mini_csv());
    CHECK(eval.exit_code == 0);

    // worker count must not leak into the output bytes
    auto serial = run_cli(common + "--jobs 1 --out " + tmp.file("run3.csv"));
    REQUIRE_MESSAGE(serial.exit_code == 0, serial.output);
    CHECK(testutil::read_file(tmp.file("run1.csv")) ==
          testutil::read_file(tmp.file("run3.csv")));
    CHECK(testutil::read_file(tmp.file("run1.reasoning.csv")) ==
          testutil::read_file(tmp.file("run3.reasoning.csv")));
}

TEST_CASE("cli: retraining with identical inputs reproduces the model byte-for-byte") {
    testutil::TempDir tmp;
    for (const std::string name : {"a.vxm", "b.vxm"}) {
        auto train = run_cli(assets_flag() + "train --data " + mini_csv() +
                             " --method svm --seed 11 --out " + tmp.file(name));
        REQUIRE_MESSAGE(train.exit_code == 0, train.output);
    }
    CHECK(testutil::read_file(tmp.file("a.vxm")) == testutil::read_file(tmp.file("b.vxm")));
}

TEST_CASE("cli: exit codes and error prefixes by failure class") {
    auto usage = run_cli("predict --nonsense-flag");
    CHECK(usage.exit_code == 1);

    auto missing_data = run_cli("split --data /nonexistent.csv --out /tmp/x");
    CHECK(missing_data.exit_code == 2);
    CHECK(missing_data.output.find("error[data]:") != std::string::npos);

    auto bad_config = run_cli(assets_flag() +
                              "llm-run --data x.csv --train y.csv --backend mock --out z.csv");
    CHECK(bad_config.exit_code == 1);
    CHECK(bad_config.output.find("error[config]:") != std::string::npos);

    testutil::TempDir tmp;
    testutil::write_file(tmp.file("bad.csv"), "id,text,labels\nt1,x,notalabel\n");
    auto bad_label = run_cli("eda --data " + tmp.file("bad.csv") + " --out " + tmp.file("e"));
    CHECK(bad_label.exit_code == 2);
    CHECK(bad_label.output.find("error[data]:") != std::string::npos);
    CHECK(bad_label.output.find("notalabel") != std::string::npos);
}

TEST_CASE("cli: train rejects unknown methods with a config error") {
    auto result = run_cli(assets_flag() + "train --data " + mini_csv() +
                          " --method boosting --out /tmp/m.vxm");
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("error[config]:") != std::string::npos);
}
