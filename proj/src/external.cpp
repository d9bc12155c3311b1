// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/external.hpp"

#include <cerrno>
#include <cstring>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "augaudit/error.hpp"

extern char** environ;

namespace augaudit {

namespace {

using ordered_json = nlohmann::ordered_json;

class Fd {
public:
    Fd() = default;
    explicit Fd(int fd) : fd_(fd) {}
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    Fd(Fd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
    Fd& operator=(Fd&& other) noexcept {
        if (this != &other) {
            reset();
            fd_ = std::exchange(other.fd_, -1);
        }
        return *this;
    }
    ~Fd() { reset(); }

    int get() const noexcept { return fd_; }
    void reset() noexcept {
        if (fd_ >= 0) ::close(fd_);
        fd_ = -1;
    }

private:
    int fd_ = -1;
};

std::pair<Fd, Fd> make_pipe() {
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) {
        throw ClassifierError(std::string("pipe failed: ") + std::strerror(errno));
    }
    return {Fd(fds[0]), Fd(fds[1])};
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

std::string external_input(const std::vector<TestCase>& train_cases,
                           const std::vector<TestCase>& eval_cases) {
    std::string out;
    for (const auto& c : train_cases) {
        ordered_json rec;
        rec["role"] = "train";
        rec["id"] = c.id;
        rec["origin_id"] = c.origin_id;
        rec["version"] = c.version;
        rec["category"] = c.category;
        rec["code"] = c.code;
        out += rec.dump() + "\n";
    }
    for (const auto& c : eval_cases) {
        ordered_json rec;
        rec["role"] = "eval";
        rec["id"] = c.id;
        rec["origin_id"] = c.origin_id;
        rec["version"] = c.version;
        rec["code"] = c.code;
        out += rec.dump() + "\n";
    }
    return out;
}

std::vector<PredictionRecord> parse_external_output(const std::string& output,
                                                    const std::vector<TestCase>& eval_cases) {
    std::map<std::string, std::string, std::less<>> by_id;
    std::set<std::string, std::less<>> expected;
    for (const auto& c : eval_cases) expected.insert(c.id);

    std::istringstream lines(output);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto where = "prediction line " + std::to_string(line_no) + " ('" + line + "')";
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ClassifierError("malformed JSON in " + where + ": " + e.what());
        }
        if (!rec.is_object() || !rec.contains("id") || !rec.contains("category") ||
            !rec["id"].is_string() || !rec["category"].is_string()) {
            throw ClassifierError("malformed JSON in " + where + ": need string fields id and category");
        }
        const auto id = rec["id"].get<std::string>();
        if (expected.count(id) == 0) throw ClassifierError("unknown id in " + where);
        if (!by_id.emplace(id, rec["category"].get<std::string>()).second) {
            throw ClassifierError("duplicate prediction in " + where);
        }
    }
    std::vector<PredictionRecord> out;
    for (const auto& c : eval_cases) {
        auto it = by_id.find(c.id);
        if (it == by_id.end()) {
            throw ClassifierError("incomplete predictions: no prediction for '" + c.id + "'");
        }
        out.push_back({c.id, it->second});
    }
    return out;
}

std::vector<PredictionRecord> run_external(const ClassifierConfig& config,
                                           const std::vector<TestCase>& train_cases,
                                           const std::vector<TestCase>& eval_cases) {
    if (config.external_command.empty()) throw ClassifierError("no external command configured");
    const std::string input = external_input(train_cases, eval_cases);

    auto [child_in_read, child_in_write] = make_pipe();
    auto [child_out_read, child_out_write] = make_pipe();

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, child_in_read.get(), STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, child_out_write.get(), STDOUT_FILENO);

    std::vector<std::string> env_storage;
    for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
        if (std::strncmp(*e, "AUGAUDIT_", 9) != 0) env_storage.emplace_back(*e);
    }
    env_storage.push_back("AUGAUDIT_LEARNING_RATE=" + format_double(config.learning_rate));
    env_storage.push_back("AUGAUDIT_BATCH_SIZE=" + std::to_string(config.batch_size));
    env_storage.push_back("AUGAUDIT_EPOCHS=" + std::to_string(config.epochs));
    env_storage.push_back("AUGAUDIT_OPTIMIZER=" + config.optimizer);
    std::vector<char*> envp;
    for (auto& s : env_storage) envp.push_back(s.data());
    envp.push_back(nullptr);

    std::string shell = "/bin/sh";
    std::string flag = "-c";
    std::string command = config.external_command;
    char* argv[] = {shell.data(), flag.data(), command.data(), nullptr};

    pid_t pid = 0;
    const int rc = ::posix_spawn(&pid, shell.c_str(), &actions, nullptr, argv, envp.data());
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
        throw ClassifierError("cannot spawn '" + config.external_command + "': " + std::strerror(rc));
    }
    child_in_read.reset();
    child_out_write.reset();

    // A child that exits before draining stdin must not kill us with SIGPIPE.
    struct sigaction ignore {};
    struct sigaction previous {};
    ignore.sa_handler = SIG_IGN;
    ::sigaction(SIGPIPE, &ignore, &previous);

    std::thread writer([fd = std::move(child_in_write), &input]() mutable {
        std::size_t done = 0;
        while (done < input.size()) {
            const ssize_t n = ::write(fd.get(), input.data() + done, input.size() - done);
            if (n < 0 && errno == EINTR) continue;
            if (n <= 0) break;
            done += static_cast<std::size_t>(n);
        }
    });

    std::string output;
    char buf[65536];
    for (;;) {
        const ssize_t n = ::read(child_out_read.get(), buf, sizeof buf);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        output.append(buf, static_cast<std::size_t>(n));
    }
    writer.join();
    ::sigaction(SIGPIPE, &previous, nullptr);

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        const std::string how = WIFEXITED(status) ? "exit status " + std::to_string(WEXITSTATUS(status))
                                                  : "signal " + std::to_string(WTERMSIG(status));
        throw ClassifierError("external command '" + config.external_command + "' failed with " + how);
    }
    return parse_external_output(output, eval_cases);
}

std::string predictions_to_jsonl(const std::vector<PredictionRecord>& predictions) {
    std::string out;
    for (const auto& p : predictions) {
        ordered_json rec;
        rec["id"] = p.id;
        rec["category"] = p.category;
        out += rec.dump() + "\n";
    }
    return out;
}

std::vector<PredictionRecord> predictions_from_jsonl(const std::string& text) {
    std::vector<PredictionRecord> out;
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto rec = nlohmann::json::parse(line);
            out.push_back({rec.at("id").get<std::string>(), rec.at("category").get<std::string>()});
        } catch (const nlohmann::json::exception& e) {
            throw ClassifierError("malformed prediction at line " + std::to_string(line_no) + ": " +
                                  e.what());
        }
    }
    return out;
}

}  // namespace augaudit
