#include "arena/sandbox.hpp"

#include <errno.h>
#include <fcntl.h>
#include <grp.h>
#include <sched.h>
#include <signal.h>
#include <string.h>
#include <sys/mount.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/time.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <time.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <mutex>

#include "arena/io.hpp"

namespace arena {

namespace fs = std::filesystem;

std::string_view to_string(ExitKind kind) {
    switch (kind) {
        case ExitKind::Ok: return "ok";
        case ExitKind::Timeout: return "timeout";
        case ExitKind::MemoryExceeded: return "memory_exceeded";
        case ExitKind::Crashed: return "crashed";
    }
    return "?";
}

fs::path find_program(std::string_view name) {
    if (name.find('/') != std::string_view::npos) {
        return ::access(std::string(name).c_str(), X_OK) == 0 ? fs::path(name) : fs::path{};
    }
    const char* path_env = std::getenv("PATH");
    std::string_view path = path_env ? path_env : "/usr/local/bin:/usr/bin:/bin";
    std::size_t pos = 0;
    while (pos <= path.size()) {
        auto colon = path.find(':', pos);
        if (colon == std::string_view::npos) colon = path.size();
        fs::path candidate = fs::path(path.substr(pos, colon - pos)) / name;
        if (::access(candidate.c_str(), X_OK) == 0) return candidate;
        pos = colon + 1;
    }
    return {};
}

namespace {

constexpr uid_t kNobody = 65534;
constexpr int kAddressSpaceHeadroomMib = 64;

struct ChildFailure {
    int stage;
    int err;
};

enum Stage : int { kStageIo = 1, kStageUnshare, kStageMount, kStageChdir, kStageRlimit, kStageIds, kStageExec };

[[noreturn]] void child_fail(int fd, int stage) {
    ChildFailure failure{stage, errno};
    [[maybe_unused]] auto n = ::write(fd, &failure, sizeof failure);
    ::_exit(127);
}

void set_limit(int resource, rlim_t soft, rlim_t hard, int err_fd) {
    struct rlimit rl{soft, hard};
    if (::setrlimit(resource, &rl) != 0) child_fail(err_fd, kStageRlimit);
}

SandboxCapabilities probe_capabilities() {
    SandboxCapabilities caps;
    caps.can_drop_privileges = ::geteuid() == 0;
    pid_t pid = ::fork();
    if (pid < 0) return caps;
    if (pid == 0) {
        int bits = 0;
        if (::unshare(CLONE_NEWNET) == 0) bits |= 1;
        if (::unshare(CLONE_NEWNS) == 0 &&
            ::mount(nullptr, "/", nullptr, MS_REC | MS_PRIVATE, nullptr) == 0 &&
            ::mount("tmpfs", "/mnt", "tmpfs", MS_NOSUID | MS_NODEV, "size=1k") == 0) {
            bits |= 2;
        }
        ::_exit(bits);
    }
    int status = 0;
    ::waitpid(pid, &status, 0);
    if (WIFEXITED(status)) {
        caps.network_namespace = (WEXITSTATUS(status) & 1) != 0;
        caps.mount_namespace = (WEXITSTATUS(status) & 2) != 0;
    }
    return caps;
}

std::string read_capped(const fs::path& path, std::size_t cap, bool& truncated) {
    truncated = false;
    int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
    if (fd < 0) return {};
    std::string out;
    char buf[65536];
    while (true) {
        auto n = ::read(fd, buf, sizeof buf);
        if (n <= 0) break;
        const auto room = cap - out.size();
        if (static_cast<std::size_t>(n) > room) {
            out.append(buf, room);
            truncated = true;
            break;
        }
        out.append(buf, static_cast<std::size_t>(n));
    }
    ::close(fd);
    return out;
}

}  // namespace

const SandboxCapabilities& sandbox_capabilities() {
    static const SandboxCapabilities caps = probe_capabilities();
    return caps;
}

RunOutcome run_sandboxed(const std::vector<std::string>& argv, std::string_view input,
                         const fs::path& workdir, const RunLimits& limits, const SandboxPolicy& policy) {
    if (argv.empty()) throw SandboxError("empty argv");
    const auto& caps = sandbox_capabilities();
    const bool use_net_ns = policy.isolate_network && caps.network_namespace;
    const bool use_mount_ns = policy.isolate_filesystem && caps.mount_namespace;
    const bool drop = policy.drop_privileges && caps.can_drop_privileges;

    // Everything the child touches is prepared before fork.
    // Relative paths with a slash are resolved inside workdir and exec'd as is.
    fs::path exe;
    if (argv[0].find('/') != std::string::npos && fs::path(argv[0]).is_relative()) {
        if (::access((workdir / argv[0]).c_str(), X_OK) == 0) exe = argv[0];
    } else {
        exe = find_program(argv[0]);
    }
    if (exe.empty()) throw SandboxError("program not found: " + argv[0]);
    const std::string exe_str = exe.string();
    std::vector<char*> c_argv;
    for (const auto& a : argv) c_argv.push_back(const_cast<char*>(a.c_str()));
    c_argv.push_back(nullptr);
    static char env_path[] = "PATH=/usr/local/bin:/usr/bin:/bin";
    static char env_lang[] = "LANG=C.UTF-8";
    static char env_home[] = "HOME=/nonexistent";
    char* envp[] = {env_path, env_lang, env_home, nullptr};

    std::vector<std::string> hidden;
    if (use_mount_ns) {
        for (const auto& p : policy.hidden_paths) {
            std::error_code ec;
            if (!fs::is_directory(p, ec)) continue;
            auto canon = fs::canonical(p, ec).string();
            if (canon != "/tmp") hidden.push_back(std::move(canon));
        }
    }
    const std::string workdir_str = workdir.string();

    TempDir scratch("arena-io");
    const auto in_path = scratch.path() / "stdin";
    const auto out_path = scratch.path() / "stdout";
    const auto err_path = scratch.path() / "stderr";
    write_file(in_path, input);

    const int in_fd = ::open(in_path.c_str(), O_RDONLY | O_CLOEXEC);
    const int out_fd = ::open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
    const int err_fd = ::open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
    int report[2];
    if (in_fd < 0 || out_fd < 0 || err_fd < 0 || ::pipe2(report, O_CLOEXEC) != 0) {
        for (int fd : {in_fd, out_fd, err_fd}) if (fd >= 0) ::close(fd);
        throw SandboxError(std::string("sandbox io setup failed: ") + ::strerror(errno));
    }

    const rlim_t cpu_soft = static_cast<rlim_t>(limits.cpu_ms / 1000 + 1);
    const rlim_t mem_bytes = static_cast<rlim_t>(limits.memory_mib + kAddressSpaceHeadroomMib) << 20;
    const rlim_t stack_bytes = static_cast<rlim_t>(limits.memory_mib) << 20;

    const auto started = std::chrono::steady_clock::now();
    pid_t pid = ::fork();
    if (pid < 0) {
        for (int fd : {in_fd, out_fd, err_fd, report[0], report[1]}) ::close(fd);
        throw SandboxError(std::string("fork failed: ") + ::strerror(errno));
    }
    if (pid == 0) {
        ::close(report[0]);
        const int rfd = report[1];
        ::setpgid(0, 0);
        if (::dup2(in_fd, 0) < 0 || ::dup2(out_fd, 1) < 0 || ::dup2(err_fd, 2) < 0) child_fail(rfd, kStageIo);
        // Enter the working directory first so it stays reachable as "." once
        // its ancestors are overmounted.
        if (::chdir(workdir_str.c_str()) != 0) child_fail(rfd, kStageChdir);
        if (use_net_ns && ::unshare(CLONE_NEWNET) != 0) child_fail(rfd, kStageUnshare);
        if (use_mount_ns) {
            if (::unshare(CLONE_NEWNS) != 0) child_fail(rfd, kStageUnshare);
            if (::mount(nullptr, "/", nullptr, MS_REC | MS_PRIVATE, nullptr) != 0) child_fail(rfd, kStageMount);
            // Fresh /tmp holding only the workdir, bound read-only at /tmp/box.
            constexpr unsigned long kQuiet = MS_NOSUID | MS_NODEV;
            if (::mount("tmpfs", "/tmp", "tmpfs", kQuiet, "size=16k,mode=0755") != 0 ||
                ::mkdir("/tmp/box", 0755) != 0 ||
                ::mount(".", "/tmp/box", nullptr, MS_BIND, nullptr) != 0 ||
                ::mount(nullptr, "/tmp/box", nullptr, MS_REMOUNT | MS_BIND | MS_RDONLY | kQuiet, nullptr) != 0 ||
                ::mount(nullptr, "/tmp", nullptr, MS_REMOUNT | MS_RDONLY | kQuiet, nullptr) != 0 ||
                ::chdir("/tmp/box") != 0) {
                child_fail(rfd, kStageMount);
            }
            for (const auto& dir : hidden) {
                if (::mount("tmpfs", dir.c_str(), "tmpfs", kQuiet | MS_NOEXEC | MS_RDONLY, "size=4k,mode=0555") != 0) {
                    child_fail(rfd, kStageMount);
                }
            }
        }
        set_limit(RLIMIT_CPU, cpu_soft, cpu_soft + 1, rfd);
        if (limits.limit_address_space) set_limit(RLIMIT_AS, mem_bytes, mem_bytes, rfd);
        set_limit(RLIMIT_STACK, stack_bytes, stack_bytes, rfd);
        // one byte past the cap so the reader can tell truncation happened
        set_limit(RLIMIT_FSIZE, limits.output_cap_bytes + 1, limits.output_cap_bytes + 1, rfd);
        set_limit(RLIMIT_CORE, 0, 0, rfd);
        if (drop) {
            set_limit(RLIMIT_NPROC, static_cast<rlim_t>(limits.max_processes),
                      static_cast<rlim_t>(limits.max_processes), rfd);
            if (::setgroups(0, nullptr) != 0 || ::setgid(kNobody) != 0 || ::setuid(kNobody) != 0) {
                child_fail(rfd, kStageIds);
            }
        }
        ::execve(exe_str.c_str(), c_argv.data(), envp);
        child_fail(rfd, kStageExec);
    }

    ::close(report[1]);
    for (int fd : {in_fd, out_fd, err_fd}) ::close(fd);

    const auto wall_limit = std::chrono::milliseconds(limits.effective_wall_ms());
    bool wall_killed = false;
    int status = 0;
    struct rusage usage{};
    while (true) {
        pid_t r = ::wait4(pid, &status, WNOHANG, &usage);
        if (r == pid) break;
        if (r < 0 && errno != EINTR) {
            ::close(report[0]);
            throw SandboxError(std::string("wait4 failed: ") + ::strerror(errno));
        }
        if (!wall_killed && std::chrono::steady_clock::now() - started > wall_limit) {
            ::kill(-pid, SIGKILL);
            ::kill(pid, SIGKILL);
            wall_killed = true;
        }
        struct timespec nap{0, 1'000'000};
        ::nanosleep(&nap, nullptr);
    }
    ::kill(-pid, SIGKILL);  // stray descendants
    const auto wall = std::chrono::steady_clock::now() - started;

    ChildFailure failure{};
    const auto got = ::read(report[0], &failure, sizeof failure);
    ::close(report[0]);
    if (got == static_cast<ssize_t>(sizeof failure)) {
        throw SandboxError("sandbox setup failed at stage " + std::to_string(failure.stage) + ": " +
                           ::strerror(failure.err));
    }

    RunOutcome out;
    out.wall_ms = static_cast<int>(std::chrono::duration_cast<std::chrono::milliseconds>(wall).count());
    out.cpu_ms = static_cast<int>((usage.ru_utime.tv_sec + usage.ru_stime.tv_sec) * 1000 +
                                  (usage.ru_utime.tv_usec + usage.ru_stime.tv_usec) / 1000);
    out.peak_mem_mib = static_cast<double>(usage.ru_maxrss) / 1024.0;
    if (WIFEXITED(status)) out.exit_code = WEXITSTATUS(status);
    if (WIFSIGNALED(status)) out.signal = WTERMSIG(status);

    if (wall_killed || out.signal == SIGXCPU || out.cpu_ms > limits.cpu_ms) {
        out.exit = ExitKind::Timeout;
    } else if (out.peak_mem_mib > limits.memory_mib) {
        out.exit = ExitKind::MemoryExceeded;
    } else if (out.signal != 0 || out.exit_code != 0) {
        out.exit = ExitKind::Crashed;
    } else {
        out.exit = ExitKind::Ok;
    }
    out.stdout_data = read_capped(out_path, limits.output_cap_bytes, out.stdout_truncated);
    bool ignored = false;
    out.stderr_data = read_capped(err_path, 64 << 10, ignored);
    return out;
}

}  // namespace arena
