#pragma once

#include <atomic>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "arena/match_log.hpp"
#include "arena/protocol.hpp"

namespace arena {

struct ServerOptions {
    bool simulated_clock = false;
    std::int64_t ms_per_turn = 1000;
    std::optional<std::filesystem::path> log_path;
};

/// Per-connection state: which participant this connection speaks for.
struct Connection {
    std::string participant;
};

/// Sessions behind the line protocol. Client messages:
///
///   {"type":"join","participant_id":"p"}          -> {"type":"state","state":{...}}
///   {"type":"state"}                              -> {"type":"state","state":{...}}
///   {"type":"action","action":...,"parameters":{...},"usage":{...}}
///                                                 -> {"type":"result","result":{...},"state":{...}}
///   {"type":"usage","input_tokens":n,"output_tokens":n,"model_id":"...","idempotency_key":"..."}
///                                                 -> {"type":"usage_ack","charged":c,"consumed_credit":c,"duplicate":b}
///
/// A message with "action" and no "type" is an action. Failures reply
/// {"type":"error","code":...,"message":...}.
///
/// Each session has its own lock, so slow judging for one participant does
/// not block another; rankings come from standings cached after every turn.
class ArenaServer {
public:
    ArenaServer(const Contest& contest, ArenaServices services, ServerOptions options = {});
    ~ArenaServer();

    std::string handle(Connection& connection, std::string_view line);

    std::vector<LeaderboardRow> leaderboard() const;
    /// Writes the footer. Idempotent.
    void close();

private:
    struct Slot {
        std::mutex mutex;
        std::unique_ptr<Session> session;
        std::optional<ActionResult> last;
    };

    Slot* join(const std::string& participant_id);
    Slot* slot(const std::string& participant_id);
    void publish(const Session& session);

    const Contest& contest_;
    ArenaServices services_;
    ServerOptions options_;
    std::chrono::steady_clock::time_point start_;

    mutable std::mutex slots_mutex_;
    std::map<std::string, std::unique_ptr<Slot>> slots_;

    mutable std::mutex standings_mutex_;
    std::map<std::string, LeaderboardRow> standings_;

    std::mutex log_mutex_;
    MatchLogWriter writer_;
    bool closed_ = false;
};

/// Reads request lines until EOF. Joins `participant_id` up front when non-empty.
void serve_stream(ArenaServer& server, std::istream& in, std::ostream& out, const std::string& participant_id);

/// Line protocol over TCP, one thread per connection.
class TcpServer {
public:
    /// Binds immediately; port 0 picks a free port.
    TcpServer(ArenaServer& server, const std::string& host, int port);
    ~TcpServer();
    TcpServer(const TcpServer&) = delete;
    TcpServer& operator=(const TcpServer&) = delete;

    int port() const { return port_; }
    /// Accepts until stop() is called.
    void run();
    void stop();

private:
    void serve_connection(int fd);

    ArenaServer& server_;
    int listen_fd_ = -1;
    int port_ = 0;
    std::atomic<bool> stopping_{false};
    std::mutex threads_mutex_;
    std::vector<std::thread> threads_;
    std::vector<int> client_fds_;
};

}  // namespace arena
