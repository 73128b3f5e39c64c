#pragma once

// Straight-line interpreters of the worker, tester, critical, recommended,
// scout and cleaner algorithms over plain structs. Shares no code with the
// library; the replay harness compares its log text with the library's.

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

struct Res {
    double cpu = 0.0;
    double mem = 0.0;
};

struct MachineSpec {
    double cpu = 4.0;
    double mem = 8.0;
    double p_base = 60.0;
    double p_cpu = 100.0;
    double p_mem = 8.0;
    double p_standby = 5.0;
    double wake = 30.0;
    double boot = 120.0;
};

enum class Power { Active, Standby, Off, Failed };

struct Machine {
    std::uint32_t id = 0;
    MachineSpec spec;
    Power state = Power::Off;
    bool crashed = false;
    double last_seen = 0.0;
    double boot_until = -std::numeric_limits<double>::infinity();
    double ready_at = -std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> nbrs;
    std::vector<std::uint32_t> hosted; // placement order
};

struct Vm {
    std::uint32_t id = 0;
    std::uint32_t app = 0;
    std::uint32_t host = 0;
    Res ent;
    bool clone = false;
    std::uint32_t parent = 0;
    double share = 1.0;
    double expiry = 0.0;
};

struct App {
    double rtime = 1.0;
    double thput = 0.8;
    double expiry = 0.0;
};

/// Scripted measurements of one application at traffic share 1.
struct Load {
    double cpu = 0.0;
    double mem = 0.0;
    double rtime = 0.0;
    double thput = 1.0;
};

struct Params {
    Res basic{1.0, 1.0};
    int pool = 3;
    double peak = 0.90;
    double low = 0.50;
    double desirable = 0.80;
    double clone_fraction = 0.5;
    double headroom = 1.3;
    double margin = 0.3;
    double warning = 7 * 86400.0;
    double timeout = 30.0;
    double w_ppw = 0.5;
    double w_mpw = 0.5;
};

class World {
public:
    explicit World(Params p) : p_(p) {}

    /// Fleet setup: machines in id order, then `start()` sorts them and
    /// powers index 0 on, the next `pool` to Standby, the rest Off.
    void add_machine(const MachineSpec& spec, const std::vector<std::uint32_t>& nbrs);
    void start();

    double now = 0.0;
    std::vector<std::string> log;

    void arrive(std::uint32_t app, App a);
    void set_load(std::uint32_t app, Load l) { load_[app] = l; }
    void tester(std::uint32_t n);
    void cleaner(std::uint32_t n);
    void scout(std::uint32_t n);
    void crash(std::uint32_t n);
    void join(const std::string& key, const MachineSpec& spec, std::optional<std::uint32_t> contact);
    /// Engine-side visit gate: ants only act on nodes in the table.
    bool visitable(std::uint32_t n) const;
    void touch(std::uint32_t n);
    bool queue_empty() const { return q_.empty(); }
    void drain();
    std::size_t fleet_size() const { return m_.size(); }

private:
    // Table.
    void sort_table();
    int index_of(std::uint32_t n) const;
    std::optional<std::uint32_t> pointed() const;

    // Measurements.
    Res free_of(std::uint32_t n) const;
    bool fits(std::uint32_t n, Res need) const;
    Res usage(const Vm& v) const;
    Res node_usage(std::uint32_t n) const;
    int slam_of(const Vm& v) const;

    // Power.
    std::string wake(std::uint32_t n);
    std::string to_standby(std::uint32_t n);
    std::string to_off(std::uint32_t n);
    bool ready(std::uint32_t n) const { return m_[n].ready_at <= now; }

    // Algorithms.
    void allocate(std::uint32_t app);
    void advance_pointer();
    void warm_pool();
    void critical(std::uint32_t vm, int code);
    void recommended(std::uint32_t vm, int code);
    void consolidate(std::uint32_t n);
    void fail(std::uint32_t n);
    void redirect(std::uint32_t dead);
    void register_machine(const std::string& key, const MachineSpec& spec, std::optional<std::uint32_t> contact);

    // Placement helpers.
    std::uint32_t new_vm(std::uint32_t app, std::uint32_t host, Res ent, bool clone, std::uint32_t parent);
    void move(std::uint32_t vm, std::uint32_t to);
    void drop(std::uint32_t vm);
    std::vector<std::uint32_t> vms_of(std::uint32_t app) const;

    void emit(const std::string& body);

    Params p_;
    std::vector<Machine> m_;
    std::vector<std::uint32_t> table_;
    int ptr_ = -1;
    std::map<std::uint32_t, Vm> vms_;
    std::uint32_t next_vm_ = 0;
    std::map<std::uint32_t, App> apps_;
    std::map<std::uint32_t, Load> load_;
    std::deque<std::uint32_t> q_;
    std::set<std::uint32_t> warned_;
    std::set<std::string> keys_;
    std::map<std::uint32_t, std::vector<std::pair<std::string, MachineSpec>>> parked_;
};

std::string num(double v);

} // namespace oracle
