#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "drunktext/corpus.hpp"
#include "drunktext/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = DRUNKTEXT_CLI_PATH;
const std::string kLexicons = DRUNKTEXT_LEXICON_DIR;

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / name;
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string small_flags(const fs::path& out) {
    return "--lexicons " + kLexicons + " --out " + out.string() +
           " --seed 7 generate --n-drunk 25 --n-nondrunk 25 --tweets-min 40 --tweets-max 80";
}

// relative path -> content hash for every regular file under root
std::map<std::string, std::uint64_t> tree_hashes(const fs::path& root) {
    std::map<std::string, std::uint64_t> hashes;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            hashes[fs::relative(entry.path(), root).string()] =
                drunktext::fnv1a64_file(entry.path().string());
    return hashes;
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
    CHECK(run("evaluate --k 1") == 1);
    CHECK(run("generate --no-such-flag") == 1);
    CHECK(run("peaks --window 4") == 1);
    CHECK(run("communities --mode nonsense") == 1);
    CHECK(run("") == 1);
    CHECK(run("--help") == 0);
}

TEST_CASE("data errors exit with code 2") {
    TempDir dir("drunktext_cli_err");
    CHECK(run("--lexicons " + kLexicons + " --out " + dir.path.string() +
              " --input /nonexistent.jsonl label") == 2);
    CHECK(run("--lexicons /nonexistent_dir --out " + dir.path.string() + " generate") == 2);
}

TEST_CASE("generate and label write corpus files plus manifests") {
    TempDir dir("drunktext_cli_gen");
    REQUIRE(run(small_flags(dir.path)) == 0);
    CHECK(fs::exists(dir.path / "corpus.jsonl"));
    CHECK(fs::exists(dir.path / "manifest-generate.json"));

    REQUIRE(run("--lexicons " + kLexicons + " --out " + dir.path.string() + " --seed 7 label") ==
            0);
    CHECK(fs::exists(dir.path / "labeled.jsonl"));

    REQUIRE(run("--lexicons " + kLexicons + " --out " + dir.path.string() +
                " --seed 7 featurize") == 0);
    std::string header = first_line(dir.path / "features_weekday.csv");
    CHECK(header.find("drunk_frac") != std::string::npos);
    CHECK(header.find("user_id,segment,label") != std::string::npos);

    REQUIRE(run("--lexicons " + kLexicons + " --out " + dir.path.string() +
                " --seed 7 report-categories") == 0);
    CHECK(first_line(dir.path / "category_report.csv") == "category,alpha,beta,gamma,delta");
}

TEST_CASE("the full pipeline is deterministic and composes from stages") {
    TempDir all_a("drunktext_all_a"), all_b("drunktext_all_b"), steps("drunktext_steps");

    auto all_cmd = [&](const fs::path& out) {
        return "--lexicons " + kLexicons + " --out " + out.string() +
               " --seed 7 all --n-drunk 25 --n-nondrunk 25 --k 5";
    };
    REQUIRE(run(all_cmd(all_a.path)) == 0);
    REQUIRE(run(all_cmd(all_b.path)) == 0);
    auto ha = tree_hashes(all_a.path);
    CHECK(ha == tree_hashes(all_b.path));

    // same tree from individual subcommands with the same flags
    std::string base = "--lexicons " + kLexicons + " --out " + steps.path.string() + " --seed 7 ";
    REQUIRE(run(base + "generate --n-drunk 25 --n-nondrunk 25") == 0);
    REQUIRE(run(base + "label") == 0);
    REQUIRE(run(base + "featurize") == 0);
    REQUIRE(run(base + "report-categories") == 0);
    REQUIRE(run(base + "evaluate --k 5") == 0);
    REQUIRE(run(base + "rank") == 0);
    REQUIRE(run(base + "peaks") == 0);
    REQUIRE(run(base + "bots") == 0);
    REQUIRE(run(base + "communities --mode interest") == 0);
    REQUIRE(run(base + "communities --mode friends") == 0);
    REQUIRE(run(base + "communities --mode followers") == 0);
    CHECK(tree_hashes(steps.path) == ha);
}

TEST_CASE("evaluate accepts the random negative-set analog") {
    TempDir dir("drunktext_cli_negset");
    REQUIRE(run(small_flags(dir.path)) == 0);
    std::string base = "--lexicons " + kLexicons + " --out " + dir.path.string() + " --seed 7 ";
    REQUIRE(run(base + "label") == 0);
    REQUIRE(run(base + "evaluate --classifier svm --k 5 --negative-set random") == 0);
    CHECK(fs::exists(dir.path / "evaluation.csv"));
    CHECK(fs::exists(dir.path / "evaluation.json"));
}

TEST_CASE("manifests carry correct content hashes for their outputs") {
    TempDir dir("drunktext_cli_manifest");
    REQUIRE(run(small_flags(dir.path)) == 0);
    std::ifstream in(dir.path / "manifest-generate.json");
    std::string manifest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    char expected[32];
    std::snprintf(expected, sizeof(expected), "%016llx",
                  static_cast<unsigned long long>(
                      drunktext::fnv1a64_file((dir.path / "corpus.jsonl").string())));
    CHECK(manifest.find(expected) != std::string::npos);
    CHECK(manifest.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("tweets-min/max flags reach the generator") {
    TempDir dir("drunktext_cli_range");
    REQUIRE(run("--lexicons " + kLexicons + " --out " + dir.path.string() +
                " --seed 3 generate --n-drunk 2 --n-nondrunk 2 --tweets-min 5 --tweets-max 5") ==
            0);
    auto users = drunktext::load_corpus((dir.path / "corpus.jsonl").string());
    REQUIRE(users.size() == 4);
    for (const auto& u : users) CHECK(u.tweets.size() == 5);
}
