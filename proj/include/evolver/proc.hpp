#pragma once

#include <csignal>
#include <cstdlib>
#include <string>
#include <sys/types.h>
#include <sys/wait.h>
#include <time.h>
#include <unistd.h>
#include <utility>
#include <vector>

#include "evolver/errors.hpp"
#include "evolver/fs.hpp"

namespace evolver {

struct ProcessResult {
    int exit_code = -1;
    bool timed_out = false;
};

// Runs `sh -c command` in `cwd` with extra environment variables, enforcing a
// wall-clock timeout. On timeout the whole process group is killed.
inline ProcessResult run_process(const std::string& command, const fs::path& cwd,
                                 const std::vector<std::pair<std::string, std::string>>& env,
                                 double timeout_s) {
    pid_t pid = ::fork();
    if (pid < 0) throw Error("fork failed");
    if (pid == 0) {
        ::setpgid(0, 0);
        if (::chdir(cwd.c_str()) != 0) ::_exit(127);
        for (const auto& [k, v] : env) ::setenv(k.c_str(), v.c_str(), 1);
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }

    const auto deadline_ns = static_cast<long long>(timeout_s * 1e9);
    long long waited_ns = 0;
    ProcessResult result;
    while (true) {
        int status = 0;
        pid_t r = ::waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
            return result;
        }
        if (r < 0) throw Error("waitpid failed");
        if (waited_ns >= deadline_ns) {
            ::kill(-pid, SIGKILL);
            ::kill(pid, SIGKILL);
            ::waitpid(pid, &status, 0);
            result.timed_out = true;
            result.exit_code = -1;
            return result;
        }
        struct timespec ts{0, 5'000'000}; // 5 ms
        ::nanosleep(&ts, nullptr);
        waited_ns += 5'000'000;
    }
}

} // namespace evolver
