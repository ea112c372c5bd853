// End-to-end corpus runner: every corpus data file may carry a sibling
// .expect sidecar listing CLI invocations and the exit code each must
// produce.  Sidecar syntax, one invocation per line:
//
//   <exit-code> TAB <arg> TAB <arg> ...
//
// Arguments are TAB-separated so formulas may contain spaces; the literal
// argument {} is replaced by the path of the sibling data file (same stem,
// .proof or .model).  Blank lines and lines starting with '#' are skipped.
// The real CLI binary is spawned for each line; only the exit code is
// compared, so the sidecars pin the verdict surface without freezing the
// human-readable output.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Runs the CLI with the given arguments, stdout/stderr silenced, and
// returns the exit code (or -1 if the child did not exit normally).
int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> argv_store;
  argv_store.push_back(FOLP_CLI_PATH);
  for (const auto& a : args) argv_store.push_back(a);
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  argv.push_back(nullptr);

  pid_t pid = fork();
  REQUIRE(pid >= 0);
  if (pid == 0) {
    int devnull = open("/dev/null", O_WRONLY);
    if (devnull >= 0) {
      dup2(devnull, STDOUT_FILENO);
      dup2(devnull, STDERR_FILENO);
      close(devnull);
    }
    execv(FOLP_CLI_PATH, argv.data());
    _exit(127);  // exec failed
  }
  int status = 0;
  REQUIRE(waitpid(pid, &status, 0) == pid);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path sibling_data_file(const fs::path& expect) {
  for (const char* ext : {".proof", ".model"}) {
    fs::path cand = expect;
    cand.replace_extension(ext);
    if (fs::exists(cand)) return cand;
  }
  FAIL("no sibling .proof or .model for ", expect.string());
  return {};
}

}  // namespace

TEST_CASE("every corpus expect sidecar replays with the pinned exit codes") {
  std::vector<fs::path> sidecars;
  for (const auto& entry : fs::recursive_directory_iterator(FOLP_CORPUS_DIR)) {
    if (entry.is_regular_file() && entry.path().extension() == ".expect")
      sidecars.push_back(entry.path());
  }
  std::sort(sidecars.begin(), sidecars.end());
  REQUIRE(sidecars.size() >= 19);  // 10 proofs + 9 models

  int invocations = 0;
  for (const auto& sc : sidecars) {
    fs::path data = sibling_data_file(sc);
    std::ifstream in(sc);
    REQUIRE(in.good());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> fields = split_tabs(line);
      REQUIRE(fields.size() >= 2);
      int want = std::stoi(fields[0]);
      std::vector<std::string> args(fields.begin() + 1, fields.end());
      for (auto& a : args)
        if (a == "{}") a = data.string();

      std::string shown = sc.filename().string() + ":" + std::to_string(lineno);
      for (const auto& a : args) shown += " " + a;
      CAPTURE(shown);
      CHECK(run_cli(args) == want);
      ++invocations;
    }
  }
  CHECK(invocations >= 60);
  MESSAGE("replayed ", invocations, " CLI invocations from ", sidecars.size(),
          " sidecars");
}
