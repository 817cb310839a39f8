#include "arena/server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

namespace arena {

using nlohmann::json;

namespace {

std::string error_reply(const std::string& code, const std::string& message) {
    return json{{"type", "error"}, {"code", code}, {"message", message}}.dump();
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

ArenaServer::ArenaServer(const Contest& contest, ArenaServices services, ServerOptions options)
    : contest_(contest), services_(std::move(services)), options_(std::move(options)),
      start_(std::chrono::steady_clock::now()) {
    if (options_.log_path) {
        writer_ = MatchLogWriter(*options_.log_path);
        MatchHeader h;
        h.kind = "serve";
        h.contest_id = contest_.id;
        h.config = contest_.config;
        for (const auto& p : contest_.problems) h.problems.push_back({p.id, p.level});
        h.started_at = utc_now();
        // Participants join while the server runs; turn records name them.
        h.extra = {{"dynamic_participants", true}};
        writer_.header(h);
    }
}

ArenaServer::~ArenaServer() { close(); }

void ArenaServer::close() {
    std::lock_guard lock(log_mutex_);
    if (closed_) return;
    closed_ = true;
    MatchFooter f;
    f.leaderboard = leaderboard();
    writer_.footer(f);
}

std::vector<LeaderboardRow> ArenaServer::leaderboard() const {
    std::lock_guard lock(standings_mutex_);
    std::vector<LeaderboardRow> rows;
    for (const auto& [id, row] : standings_) rows.push_back(row);
    return rank(std::move(rows));
}

void ArenaServer::publish(const Session& session) {
    std::lock_guard lock(standings_mutex_);
    standings_[session.state().id] = session.standing();
}

ArenaServer::Slot* ArenaServer::slot(const std::string& participant_id) {
    std::lock_guard lock(slots_mutex_);
    auto it = slots_.find(participant_id);
    return it == slots_.end() ? nullptr : it->second.get();
}

ArenaServer::Slot* ArenaServer::join(const std::string& participant_id) {
    Slot* s = nullptr;
    {
        std::lock_guard lock(slots_mutex_);
        auto& entry = slots_[participant_id];
        if (!entry) {
            entry = std::make_unique<Slot>();
            std::unique_ptr<Clock> clock;
            if (options_.simulated_clock) clock = std::make_unique<SimulatedClock>(options_.ms_per_turn);
            else clock = std::make_unique<SteadyClock>();
            entry->session = std::make_unique<Session>(participant_id, contest_, services_, std::move(clock));
        }
        s = entry.get();
    }
    std::lock_guard lock(s->mutex);
    publish(*s->session);
    return s;
}

std::string ArenaServer::handle(Connection& connection, std::string_view line) {
    json message;
    try {
        message = json::parse(line);
    } catch (const json::parse_error& e) {
        // Unparseable lines from a joined participant still cost a turn.
        if (Slot* s = connection.participant.empty() ? nullptr : slot(connection.participant)) {
            std::lock_guard lock(s->mutex);
            const auto mark = s->session->state().ledger.entries().size();
            const ParsedAction parsed = parse_action(line);
            auto result = s->session->step(parsed);
            publish(*s->session);
            {
                std::lock_guard log_lock(log_mutex_);
                auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
                writer_.turn(make_turn_record(connection.participant, &parsed, result, s->session->state(), mark,
                                              s->session->elapsed_ms(), wall));
            }
            return json{{"type", "result"}, {"result", to_json(result)},
                        {"state", to_json(s->session->render_state(leaderboard()))}}.dump();
        }
        return error_reply("malformed", std::string("not valid JSON: ") + e.what());
    }
    if (!message.is_object()) return error_reply("malformed", "message must be a JSON object");

    std::string type = message.value("type", std::string());
    if (type.empty() && message.contains("action")) type = "action";

    if (type == "join") {
        if (!message.contains("participant_id") || !message.at("participant_id").is_string() ||
            message.at("participant_id").get<std::string>().empty()) {
            return error_reply("missing_parameter", "join needs a non-empty participant_id");
        }
        connection.participant = message.at("participant_id").get<std::string>();
        Slot* s = join(connection.participant);
        std::lock_guard lock(s->mutex);
        return json{{"type", "state"}, {"state", to_json(s->session->render_state(leaderboard()))}}.dump();
    }

    Slot* s = connection.participant.empty() ? nullptr : slot(connection.participant);
    if (!s) return error_reply("not_joined", "send {\"type\":\"join\",\"participant_id\":...} first");

    if (type == "state") {
        std::lock_guard lock(s->mutex);
        return json{{"type", "state"}, {"state", to_json(s->session->render_state(leaderboard()))}}.dump();
    }
    if (type == "usage") {
        Usage usage;
        try {
            usage.input_tokens = message.value("input_tokens", std::int64_t{0});
            usage.output_tokens = message.value("output_tokens", std::int64_t{0});
            usage.model_id = message.value("model_id", std::string());
            if (message.contains("idempotency_key") && !message.at("idempotency_key").is_null()) {
                usage.idempotency_key = message.at("idempotency_key").get<std::string>();
            }
        } catch (const json::exception& e) {
            return error_reply("invalid_parameter", e.what());
        }
        if (usage.input_tokens < 0 || usage.output_tokens < 0) {
            return error_reply("invalid_parameter", "token counts must be >= 0");
        }
        std::lock_guard lock(s->mutex);
        const auto ack = s->session->report_usage(usage);
        publish(*s->session);
        return json{{"type", "usage_ack"},
                    {"charged", ack.charged},
                    {"consumed_credit", ack.consumed_credit},
                    {"duplicate", ack.duplicate}}
            .dump();
    }
    if (type == "action") {
        std::lock_guard lock(s->mutex);
        const auto mark = s->session->state().ledger.entries().size();
        const ParsedAction parsed = parse_action(message);
        auto result = s->session->step(parsed);
        publish(*s->session);
        if (!(result.error && result.error->code == "not_active")) {
            std::lock_guard log_lock(log_mutex_);
            auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
            writer_.turn(make_turn_record(connection.participant, &parsed, result, s->session->state(), mark,
                                          s->session->elapsed_ms(), wall));
        }
        return json{{"type", "result"}, {"result", to_json(result)},
                    {"state", to_json(s->session->render_state(leaderboard()))}}
            .dump();
    }
    return error_reply("unknown_type", "unknown message type '" + type + "'");
}

void serve_stream(ArenaServer& server, std::istream& in, std::ostream& out, const std::string& participant_id) {
    Connection connection;
    if (!participant_id.empty()) {
        out << server.handle(connection, json{{"type", "join"}, {"participant_id", participant_id}}.dump()) << '\n';
        out.flush();
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out << server.handle(connection, line) << '\n';
        out.flush();
    }
}

TcpServer::TcpServer(ArenaServer& server, const std::string& host, int port) : server_(server) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    const auto service = std::to_string(port);
    if (int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints, &res); rc != 0) {
        throw Error("resolve " + host + ": " + ::gai_strerror(rc));
    }
    std::string last_error = "no address";
    for (auto* ai = res; ai; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
        if (fd < 0) continue;
        int one = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
            listen_fd_ = fd;
            break;
        }
        last_error = std::strerror(errno);
        ::close(fd);
    }
    ::freeaddrinfo(res);
    if (listen_fd_ < 0) throw Error("listen on " + host + ":" + service + ": " + last_error);

    sockaddr_storage addr{};
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = addr.ss_family == AF_INET6 ? ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port)
                                       : ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
}

TcpServer::~TcpServer() {
    stop();
    std::vector<std::thread> threads;
    {
        std::lock_guard lock(threads_mutex_);
        threads.swap(threads_);
    }
    for (auto& t : threads) t.join();
    if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::stop() {
    stopping_ = true;
    std::lock_guard lock(threads_mutex_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
}

void TcpServer::run() {
    while (!stopping_) {
        pollfd p{listen_fd_, POLLIN, 0};
        const int rc = ::poll(&p, 1, 100);
        if (rc <= 0) continue;
        const int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
        if (fd < 0) continue;
        std::lock_guard lock(threads_mutex_);
        if (stopping_) {
            ::close(fd);
            break;
        }
        client_fds_.push_back(fd);
        threads_.emplace_back([this, fd] { serve_connection(fd); });
    }
}

void TcpServer::serve_connection(int fd) {
    Connection connection;
    std::string buffer;
    char chunk[4096];
    auto send_all = [fd](const std::string& data) {
        std::size_t off = 0;
        while (off < data.size()) {
            const auto n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
            if (n < 0 && errno == EINTR) continue;
            if (n <= 0) return false;
            off += static_cast<std::size_t>(n);
        }
        return true;
    };
    while (!stopping_) {
        const auto n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t nl;
        bool ok = true;
        while (ok && (nl = buffer.find('\n')) != std::string::npos) {
            const auto line = buffer.substr(0, nl);
            buffer.erase(0, nl + 1);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            ok = send_all(server_.handle(connection, line) + "\n");
        }
        if (!ok) break;
    }
    std::lock_guard lock(threads_mutex_);
    client_fds_.erase(std::remove(client_fds_.begin(), client_fds_.end(), fd), client_fds_.end());
    ::close(fd);
}

}  // namespace arena
