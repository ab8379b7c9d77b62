//
// Copyright (c) 2026, the aspbench authors
//
// This file is part of aspbench.
//
// Permission is hereby granted, free of charge, to any person obtaining a copy
// of this software and associated documentation files (the "Software"), to
// deal in the Software without restriction, including without limitation the
// rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
// sell copies of the Software, and to permit persons to whom the Software is
// furnished to do so, subject to the following conditions:
//
// The above copyright notice and this permission notice shall be included in
// all copies or substantial portions of the Software.
//
// THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
// IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
// FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
// AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
// LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
// FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
// IN THE SOFTWARE.
//

#include <aspbench/process.hpp>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace aspbench {
namespace {

std::atomic<bool> cancel_flag{false};

struct Pipe {
    int fd[2] = {-1, -1};
    bool open() { return ::pipe2(fd, O_CLOEXEC) == 0; }
    void close_end(int i) {
        if (fd[i] >= 0) {
            ::close(fd[i]);
            fd[i] = -1;
        }
    }
    ~Pipe() {
        close_end(0);
        close_end(1);
    }
};

void set_nonblocking(int fd) { ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK); }

} // namespace

void request_cancel() noexcept { cancel_flag.store(true); }
bool cancel_requested() noexcept { return cancel_flag.load(); }
void reset_cancel() noexcept { cancel_flag.store(false); }

std::string find_in_path(std::string_view name) {
    if (name.find('/') != std::string_view::npos) {
        return ::access(std::string(name).c_str(), X_OK) == 0 ? std::string(name) : std::string();
    }
    const char* path = std::getenv("PATH");
    if (path == nullptr) {
        return {};
    }
    std::string_view rest(path);
    while (!rest.empty()) {
        auto colon = rest.find(':');
        auto dir = rest.substr(0, colon);
        rest = colon == std::string_view::npos ? std::string_view() : rest.substr(colon + 1);
        if (dir.empty()) {
            dir = ".";
        }
        auto candidate = (std::filesystem::path(dir) / name).string();
        if (::access(candidate.c_str(), X_OK) == 0 && !std::filesystem::is_directory(candidate)) {
            return candidate;
        }
    }
    return {};
}

ProcessResult run_process(const std::vector<std::string>& argv, std::string_view input,
                          std::chrono::milliseconds timeout) {
    using clock = std::chrono::steady_clock;
    static const bool sigpipe_ignored = [] {
        ::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)sigpipe_ignored;
    ProcessResult res;
    const auto start = clock::now();
    Pipe in, out, err;
    if (argv.empty() || !in.open() || !out.open() || !err.open()) {
        res.spawn_failed = true;
        res.err = "cannot create pipes";
        return res;
    }
    std::vector<char*> cargv;
    for (const auto& a : argv) {
        cargv.push_back(const_cast<char*>(a.c_str()));
    }
    cargv.push_back(nullptr);

    pid_t pid = ::fork();
    if (pid < 0) {
        res.spawn_failed = true;
        res.err = std::strerror(errno);
        return res;
    }
    if (pid == 0) {
        ::setpgid(0, 0);
        ::dup2(in.fd[0], 0);
        ::dup2(out.fd[1], 1);
        ::dup2(err.fd[1], 2);
        ::execvp(cargv[0], cargv.data());
        const char msg[] = "exec failed\n";
        [[maybe_unused]] auto n = ::write(2, msg, sizeof msg - 1);
        ::_exit(127);
    }
    ::setpgid(pid, pid);
    in.close_end(0);
    out.close_end(1);
    err.close_end(1);
    set_nonblocking(in.fd[1]);
    set_nonblocking(out.fd[0]);
    set_nonblocking(err.fd[0]);

    std::size_t written = 0;
    if (input.empty()) {
        in.close_end(1);
    }
    const auto deadline = start + timeout;
    bool killed = false;
    char buf[65536];
    while (out.fd[0] >= 0 || err.fd[0] >= 0) {
        pollfd fds[3];
        nfds_t n = 0;
        int which[3];
        if (in.fd[1] >= 0) {
            fds[n] = {in.fd[1], POLLOUT, 0};
            which[n++] = 0;
        }
        if (out.fd[0] >= 0) {
            fds[n] = {out.fd[0], POLLIN, 0};
            which[n++] = 1;
        }
        if (err.fd[0] >= 0) {
            fds[n] = {err.fd[0], POLLIN, 0};
            which[n++] = 2;
        }
        auto now = clock::now();
        if (!killed && (now >= deadline || cancel_requested())) {
            res.timed_out = now >= deadline;
            res.cancelled = !res.timed_out;
            ::kill(-pid, SIGKILL);
            killed = true;
        }
        int rc = ::poll(fds, n, 50);
        if (rc < 0) {
            if (errno == EINTR) {
                continue;
            }
            break;
        }
        for (nfds_t i = 0; i < n; ++i) {
            if (fds[i].revents == 0) {
                continue;
            }
            if (which[i] == 0) {
                auto w = ::write(in.fd[1], input.data() + written, input.size() - written);
                if (w > 0) {
                    written += static_cast<std::size_t>(w);
                }
                if (written >= input.size() || (w < 0 && errno != EAGAIN && errno != EINTR)) {
                    in.close_end(1);
                }
                continue;
            }
            Pipe& p = which[i] == 1 ? out : err;
            std::string& sink = which[i] == 1 ? res.out : res.err;
            auto r = ::read(p.fd[0], buf, sizeof buf);
            if (r > 0) {
                sink.append(buf, static_cast<std::size_t>(r));
            } else if (r == 0 || (errno != EAGAIN && errno != EINTR)) {
                p.close_end(0);
            }
        }
    }
    in.close_end(1);
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) {
        res.exit_code = WEXITSTATUS(status);
        if (res.exit_code == 127 && res.err == "exec failed\n") {
            res.spawn_failed = true;
        }
    } else if (WIFSIGNALED(status)) {
        res.term_signal = WTERMSIG(status);
    }
    res.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return res;
}

} // namespace aspbench
