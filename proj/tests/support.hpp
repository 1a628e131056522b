#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

// Shared helpers for the test binaries: scratch directories, small file
// I/O, environment lookups and CLI invocation.
namespace testsup {

namespace fs = std::filesystem;

inline std::string env_or(const char* name, const std::string& fallback = {}) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

inline std::string require_env(const char* name) {
    std::string v = env_or(name);
    if (v.empty()) throw std::runtime_error(std::string("environment variable not set: ") + name);
    return v;
}

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag = "sm_test") {
        auto base = fs::temp_directory_path();
        for (int i = 0;; ++i) {
            fs::path candidate = base / (tag + "." + std::to_string(::getpid()) + "." +
                                         std::to_string(counter_++) + "." + std::to_string(i));
            std::error_code ec;
            if (fs::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
            if (i > 100) throw std::runtime_error("cannot create temp dir");
        }
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

inline std::string write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return path.string();
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the signal-miner binary through the shell; args must already be
// shell-safe (the tests only pass plain paths and flags).
inline CliResult run_cli(const std::string& args, const std::string& extra_env = {}) {
    TempDir scratch("sm_cli");
    std::string bin = require_env("SIGNAL_MINER_BIN");
    std::string cmd = extra_env.empty() ? "" : extra_env + " ";
    cmd += bin + " " + args + " >" + scratch.file("out") + " 2>" + scratch.file("err");
    int rc = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    result.out = read_file(scratch.file("out"));
    result.err = read_file(scratch.file("err"));
    return result;
}

} // namespace testsup
