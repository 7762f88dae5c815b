#ifndef LRE_TESTS_GOLDEN_LIB_HPP
#define LRE_TESTS_GOLDEN_LIB_HPP

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

extern char** environ;

namespace golden {

struct Case {
  std::string name;
  std::vector<std::string> args;
  int exit_code = 0;
};

// Whitespace separated; double quotes group.
inline std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, have = false;
  for (char c : s) {
    if (c == '"') {
      quoted = !quoted;
      have = true;
    } else if (!quoted && (c == ' ' || c == '\t')) {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += c;
      have = true;
    }
  }
  if (have) out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

inline std::vector<Case> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<Case> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto a = line.find(';'), b = line.rfind(';');
    if (a == std::string::npos || a == b) throw std::runtime_error("bad manifest line: " + line);
    cases.push_back({trim(line.substr(0, a)), split_args(line.substr(a + 1, b - a - 1)), std::stoi(trim(line.substr(b + 1)))});
  }
  return cases;
}

struct Run {
  std::string out, err;
  int exit_code = -1;

  // What the golden file holds.
  std::string transcript() const {
    std::string s = out;
    if (!err.empty()) s += "-- stderr --\n" + err;
    s += "-- exit " + std::to_string(exit_code) + " --\n";
    return s;
  }
};

inline std::string slurp_fd(int fd) {
  std::string s;
  char buf[4096];
  for (ssize_t n; (n = read(fd, buf, sizeof buf)) > 0;) s.append(buf, static_cast<std::size_t>(n));
  return s;
}

// Runs binary with args in dir, LRE_COLOR=0; stdout and stderr go to temp files.
inline Run run(const std::string& binary, const std::vector<std::string>& args, const std::string& dir) {
  char out_path[] = "/tmp/lre_golden_outXXXXXX";
  char err_path[] = "/tmp/lre_golden_errXXXXXX";
  int out_fd = mkstemp(out_path), err_fd = mkstemp(err_path);
  if (out_fd < 0 || err_fd < 0) throw std::runtime_error("mkstemp failed");

  posix_spawn_file_actions_t fa;
  posix_spawn_file_actions_init(&fa);
  posix_spawn_file_actions_adddup2(&fa, out_fd, 1);
  posix_spawn_file_actions_adddup2(&fa, err_fd, 2);
  posix_spawn_file_actions_addchdir_np(&fa, dir.c_str());

  std::vector<std::string> env_store;
  for (char** e = environ; *e; ++e)
    if (std::string(*e).rfind("LRE_COLOR=", 0) != 0) env_store.emplace_back(*e);
  env_store.emplace_back("LRE_COLOR=0");
  std::vector<char*> envp;
  for (auto& e : env_store) envp.push_back(e.data());
  envp.push_back(nullptr);

  std::vector<std::string> argv_store{binary};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid;
  int rc = posix_spawn(&pid, binary.c_str(), &fa, nullptr, argv.data(), envp.data());
  posix_spawn_file_actions_destroy(&fa);
  if (rc != 0) throw std::runtime_error("cannot spawn " + binary);
  int status = 0;
  waitpid(pid, &status, 0);

  Run r;
  lseek(out_fd, 0, SEEK_SET);
  lseek(err_fd, 0, SEEK_SET);
  r.out = slurp_fd(out_fd);
  r.err = slurp_fd(err_fd);
  close(out_fd);
  close(err_fd);
  unlink(out_path);
  unlink(err_path);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string read_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "<missing " + path + ">";
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace golden

#endif
