#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evolver/errors.hpp"

namespace evolver::vliw {

// Memory-to-memory VLIW SIMD machine. All state is a flat word array; one
// bundle issues per cycle; every instruction reads cycle-start memory and all
// writes commit together at cycle end.

using Word = uint32_t;

inline constexpr int kVLen = 8;
inline constexpr size_t kMemWords = size_t{1} << 20;

enum class Engine : uint8_t { Alu, Valu, Load, Store, Flow };
inline constexpr int kEngineCount = 5;

// Per-cycle issue capacity per engine.
inline constexpr std::array<int, kEngineCount> kSlotLimits = {12, 6, 2, 2, 1};

inline int slot_limit(Engine e) { return kSlotLimits[static_cast<size_t>(e)]; }

inline const char* engine_name(Engine e) {
    switch (e) {
        case Engine::Alu: return "alu";
        case Engine::Valu: return "valu";
        case Engine::Load: return "load";
        case Engine::Store: return "store";
        case Engine::Flow: return "flow";
    }
    return "?";
}

enum class Opcode : uint8_t {
    Add, Sub, Xor, And, Or, Shl, Shr, Mul, // alu and valu
    Madd,                                  // valu only: dest = a*b + c
    VSelect,                               // flow: dest = cond ? if_true : if_false (lanewise)
    Halt,                                  // flow
    Load,                                  // load: dest = mem[src]
    LoadOffset,                            // load: dest lane = mem[mem[base+lane]]
    Store                                  // store: dest = mem[src]
};

struct Instruction {
    Engine engine;
    Opcode opcode;
    Word dest = 0;
    Word a = 0; // first source; for load_offset the base vector
    Word b = 0; // second source; for load_offset the lane index
    Word c = 0; // third source (madd addend, vselect else-branch)
};

struct Bundle {
    std::vector<Instruction> instructions;
};

// dest plus number of sources, and whether operands address 8-word vectors.
struct OpSignature {
    int sources;
    bool vector;
};

inline OpSignature op_signature(Opcode op) {
    switch (op) {
        case Opcode::Madd: return {3, true};
        case Opcode::VSelect: return {3, true};
        case Opcode::Halt: return {0, false};
        case Opcode::Load: return {1, false};
        case Opcode::LoadOffset: return {2, true}; // sources: base vector + lane
        case Opcode::Store: return {1, false};
        default: return {2, false}; // scalar form; valu variants are vector
    }
}

inline bool engine_accepts(Engine e, Opcode op) {
    switch (e) {
        case Engine::Alu:
        case Engine::Valu:
            if (op == Opcode::Madd) return e == Engine::Valu;
            return op == Opcode::Add || op == Opcode::Sub || op == Opcode::Xor ||
                   op == Opcode::And || op == Opcode::Or || op == Opcode::Shl ||
                   op == Opcode::Shr || op == Opcode::Mul;
        case Engine::Flow: return op == Opcode::VSelect || op == Opcode::Halt;
        case Engine::Load: return op == Opcode::Load || op == Opcode::LoadOffset;
        case Engine::Store: return op == Opcode::Store;
    }
    return false;
}

struct MachineState {
    std::vector<Word> memory;
    uint64_t cycle = 0;
    bool halted = false;

    MachineState() : memory(kMemWords, 0) {}
    explicit MachineState(size_t words) : memory(words, 0) {}

    void reset() {
        std::fill(memory.begin(), memory.end(), 0);
        cycle = 0;
        halted = false;
    }
};

struct SlotViolation {
    Engine engine;
    int count;
    int limit;
};

// Accept iff every engine's instruction count is within its slot limit.
inline std::vector<SlotViolation> check_bundle(const Bundle& b) {
    std::array<int, kEngineCount> counts{};
    for (const auto& ins : b.instructions) counts[static_cast<size_t>(ins.engine)]++;
    std::vector<SlotViolation> violations;
    for (int e = 0; e < kEngineCount; ++e) {
        if (counts[e] > kSlotLimits[e]) {
            violations.push_back({static_cast<Engine>(e), counts[e], kSlotLimits[e]});
        }
    }
    return violations;
}

class SimulationError : public Error {
public:
    explicit SimulationError(std::string msg) : Error(std::move(msg), 1) {}
};

namespace detail {

inline Word alu_op(Opcode op, Word x, Word y) {
    switch (op) {
        case Opcode::Add: return x + y;
        case Opcode::Sub: return x - y;
        case Opcode::Xor: return x ^ y;
        case Opcode::And: return x & y;
        case Opcode::Or: return x | y;
        case Opcode::Shl: return x << (y & 31u);
        case Opcode::Shr: return x >> (y & 31u);
        case Opcode::Mul: return x * y;
        default: throw SimulationError("not a binary op");
    }
}

inline void check_addr(Word addr, size_t mem_size, int span, uint64_t cycle) {
    if (addr + static_cast<size_t>(span) > mem_size || addr + span < addr) {
        throw SimulationError("address out of range: " + std::to_string(addr) + " at cycle " +
                              std::to_string(cycle));
    }
}

} // namespace detail

// Executes straight-line bundles. Slot limits are validated for the whole
// program up front; a violating program never touches machine state.
// Within a cycle all reads see cycle-start memory; duplicate writes to one
// address are a simulation error.
inline uint64_t execute(std::span<const Bundle> program, MachineState& state) {
    for (size_t i = 0; i < program.size(); ++i) {
        auto v = check_bundle(program[i]);
        if (!v.empty()) {
            throw SimulationError("slot limit exceeded in bundle " + std::to_string(i) + ": " +
                                  std::string(engine_name(v[0].engine)) + " count " +
                                  std::to_string(v[0].count) + " > " + std::to_string(v[0].limit));
        }
    }

    const size_t mem_size = state.memory.size();
    std::vector<std::pair<Word, Word>> writes;
    writes.reserve(80);

    for (const auto& bundle : program) {
        if (state.halted) break;
        writes.clear();
        bool halt_now = false;

        for (const auto& ins : bundle.instructions) {
            const auto& mem = state.memory;
            switch (ins.opcode) {
                case Opcode::Add: case Opcode::Sub: case Opcode::Xor: case Opcode::And:
                case Opcode::Or: case Opcode::Shl: case Opcode::Shr: case Opcode::Mul: {
                    if (ins.engine == Engine::Valu) {
                        detail::check_addr(ins.dest, mem_size, kVLen, state.cycle);
                        detail::check_addr(ins.a, mem_size, kVLen, state.cycle);
                        detail::check_addr(ins.b, mem_size, kVLen, state.cycle);
                        for (int l = 0; l < kVLen; ++l) {
                            writes.emplace_back(ins.dest + l,
                                                detail::alu_op(ins.opcode, mem[ins.a + l], mem[ins.b + l]));
                        }
                    } else {
                        detail::check_addr(ins.dest, mem_size, 1, state.cycle);
                        detail::check_addr(ins.a, mem_size, 1, state.cycle);
                        detail::check_addr(ins.b, mem_size, 1, state.cycle);
                        writes.emplace_back(ins.dest, detail::alu_op(ins.opcode, mem[ins.a], mem[ins.b]));
                    }
                    break;
                }
                case Opcode::Madd: {
                    detail::check_addr(ins.dest, mem_size, kVLen, state.cycle);
                    detail::check_addr(ins.a, mem_size, kVLen, state.cycle);
                    detail::check_addr(ins.b, mem_size, kVLen, state.cycle);
                    detail::check_addr(ins.c, mem_size, kVLen, state.cycle);
                    for (int l = 0; l < kVLen; ++l) {
                        writes.emplace_back(ins.dest + l, mem[ins.a + l] * mem[ins.b + l] + mem[ins.c + l]);
                    }
                    break;
                }
                case Opcode::VSelect: {
                    detail::check_addr(ins.dest, mem_size, kVLen, state.cycle);
                    detail::check_addr(ins.a, mem_size, kVLen, state.cycle);
                    detail::check_addr(ins.b, mem_size, kVLen, state.cycle);
                    detail::check_addr(ins.c, mem_size, kVLen, state.cycle);
                    for (int l = 0; l < kVLen; ++l) {
                        writes.emplace_back(ins.dest + l,
                                            mem[ins.a + l] != 0 ? mem[ins.b + l] : mem[ins.c + l]);
                    }
                    break;
                }
                case Opcode::Halt:
                    halt_now = true;
                    break;
                case Opcode::Load:
                case Opcode::Store: {
                    detail::check_addr(ins.dest, mem_size, 1, state.cycle);
                    detail::check_addr(ins.a, mem_size, 1, state.cycle);
                    writes.emplace_back(ins.dest, mem[ins.a]);
                    break;
                }
                case Opcode::LoadOffset: {
                    Word lane = ins.b;
                    if (lane >= kVLen) throw SimulationError("load_offset lane out of range");
                    detail::check_addr(ins.dest, mem_size, kVLen, state.cycle);
                    detail::check_addr(ins.a, mem_size, kVLen, state.cycle);
                    Word addr = mem[ins.a + lane];
                    detail::check_addr(addr, mem_size, 1, state.cycle);
                    writes.emplace_back(ins.dest + lane, mem[addr]);
                    break;
                }
            }
        }

        std::sort(writes.begin(), writes.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (size_t w = 1; w < writes.size(); ++w) {
            if (writes[w].first == writes[w - 1].first) {
                throw SimulationError("write-write conflict at address " +
                                      std::to_string(writes[w].first) + " in cycle " +
                                      std::to_string(state.cycle));
            }
        }
        for (const auto& [addr, value] : writes) state.memory[addr] = value;
        state.cycle += 1;
        if (halt_now) state.halted = true;
    }
    return state.cycle;
}

} // namespace evolver::vliw
