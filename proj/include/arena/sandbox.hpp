#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arena/types.hpp"

namespace arena {

/// Raised when the sandbox itself cannot be set up (fork, mounts, exec of the
/// runtime). Distinct from anything the submitted program does.
class SandboxError : public Error {
public:
    using Error::Error;
};

struct RunLimits {
    int cpu_ms = 2000;
    /// Wall-clock kill; zero means 2x cpu_ms.
    int wall_ms = 0;
    int memory_mib = 256;
    std::size_t output_cap_bytes = 16u << 20;
    /// RLIMIT_AS at memory_mib plus headroom. Off for runtimes that reserve
    /// large virtual ranges up front (JVM).
    bool limit_address_space = true;
    int max_processes = 64;

    int effective_wall_ms() const { return wall_ms > 0 ? wall_ms : 2 * cpu_ms; }
};

struct SandboxPolicy {
    bool isolate_network = true;
    /// Private mount namespace: a fresh /tmp with the workdir bound read-only at
    /// /tmp/box, and empty tmpfs over each of `hidden_paths`.
    bool isolate_filesystem = true;
    /// setuid/setgid to nobody when running as root.
    bool drop_privileges = true;
    std::vector<std::filesystem::path> hidden_paths = {"/var/tmp", "/dev/shm", "/root", "/home", "/mnt", "/srv", "/opt"};

    /// Trusted toolchain runs (compilers): rlimits only.
    static SandboxPolicy trusted() { return {false, false, false, {}}; }
};

enum class ExitKind { Ok, Timeout, MemoryExceeded, Crashed };

std::string_view to_string(ExitKind kind);

struct RunOutcome {
    ExitKind exit = ExitKind::Ok;
    std::string stdout_data;
    std::string stderr_data;
    bool stdout_truncated = false;
    int cpu_ms = 0;
    int wall_ms = 0;
    double peak_mem_mib = 0.0;
    int exit_code = 0;
    /// Terminating signal, or 0.
    int signal = 0;
};

/// Kernel isolation features usable in this process, probed once.
struct SandboxCapabilities {
    bool network_namespace = false;
    bool mount_namespace = false;
    bool can_drop_privileges = false;
};

const SandboxCapabilities& sandbox_capabilities();

/// Runs `argv` (argv[0] resolved against PATH unless it contains '/') with
/// `workdir` as the current directory and `input` on stdin.
///
/// Classification: wall-clock kill, SIGXCPU, or CPU time over the limit is a
/// timeout; otherwise peak RSS above the memory limit is memory_exceeded;
/// otherwise a signal or nonzero exit is crashed.
RunOutcome run_sandboxed(const std::vector<std::string>& argv, std::string_view input,
                         const std::filesystem::path& workdir, const RunLimits& limits,
                         const SandboxPolicy& policy);

/// Resolves a program name against PATH; empty when not found.
std::filesystem::path find_program(std::string_view name);

}  // namespace arena
