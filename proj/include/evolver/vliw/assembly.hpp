#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evolver/errors.hpp"
#include "evolver/vliw/machine.hpp"

namespace evolver::vliw {

// Line-oriented kernel text:
//
//   # comment
//   const <addr> <value> [xVLEN]     scratch initialization, before any bundle
//   bundle:                          starts a cycle
//     <engine>.<opcode> <dest>[, <src>...]
//
// Addresses are decimal word addresses; vector operands name the base of 8
// consecutive words. `xVLEN` splats the value across 8 words.

struct ConstInit {
    Word addr;
    Word value;
    bool splat = false;
};

struct Program {
    std::vector<ConstInit> consts;
    std::vector<Bundle> bundles;
};

namespace detail {

struct OpName {
    const char* name;
    Opcode op;
};

inline constexpr OpName kOpNames[] = {
    {"+", Opcode::Add},   {"-", Opcode::Sub},   {"^", Opcode::Xor},
    {"&", Opcode::And},   {"|", Opcode::Or},    {"<<", Opcode::Shl},
    {">>", Opcode::Shr},  {"*", Opcode::Mul},   {"madd", Opcode::Madd},
    {"vselect", Opcode::VSelect}, {"halt", Opcode::Halt}, {"load", Opcode::Load},
    {"load_offset", Opcode::LoadOffset}, {"store", Opcode::Store},
};

inline std::string_view trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline bool parse_u32(std::string_view tok, Word& out) {
    if (tok.empty()) return false;
    uint64_t v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) return false;
    if (v > 0xffffffffull) return false;
    out = static_cast<Word>(v);
    return true;
}

} // namespace detail

inline const char* opcode_name(Opcode op) {
    for (const auto& e : detail::kOpNames) {
        if (e.op == op) return e.name;
    }
    return "?";
}

inline Program parse_program(std::string_view text) {
    Program prog;
    bool in_body = false;
    size_t pos = 0;
    int line_no = 0;

    auto fail = [&](const std::string& msg) -> void {
        throw FormatError("line " + std::to_string(line_no) + ": " + msg);
    };

    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                             : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        line_no++;

        std::string_view line = raw;
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        bool indented = !line.empty() && (line[0] == ' ' || line[0] == '\t');
        line = detail::trim(line);
        if (line.empty()) continue;

        if (line == "bundle:") {
            prog.bundles.emplace_back();
            in_body = true;
            continue;
        }

        if (line.substr(0, 6) == "const ") {
            if (in_body) fail("const after first bundle");
            std::string_view rest = detail::trim(line.substr(6));
            ConstInit ci{};
            size_t sp1 = rest.find(' ');
            if (sp1 == std::string_view::npos) fail("const needs <addr> <value>");
            if (!detail::parse_u32(detail::trim(rest.substr(0, sp1)), ci.addr)) {
                fail("malformed const address");
            }
            std::string_view tail = detail::trim(rest.substr(sp1 + 1));
            size_t sp2 = tail.find(' ');
            std::string_view val_tok = sp2 == std::string_view::npos ? tail : tail.substr(0, sp2);
            if (!detail::parse_u32(detail::trim(val_tok), ci.value)) fail("malformed const value");
            if (sp2 != std::string_view::npos) {
                std::string_view suffix = detail::trim(tail.substr(sp2 + 1));
                if (suffix != "xVLEN") fail("unexpected const suffix '" + std::string(suffix) + "'");
                ci.splat = true;
            }
            prog.consts.push_back(ci);
            continue;
        }

        // Instruction line.
        if (!indented) fail("instruction outside a bundle (missing indentation?)");
        if (prog.bundles.empty()) fail("instruction before any 'bundle:'");

        size_t sp = line.find(' ');
        std::string_view head = sp == std::string_view::npos ? line : line.substr(0, sp);
        size_t dot = head.find('.');
        if (dot == std::string_view::npos) fail("expected <engine>.<opcode>");
        std::string_view engine_tok = head.substr(0, dot);
        std::string_view op_tok = head.substr(dot + 1);

        Engine engine = Engine::Alu;
        if (engine_tok == "alu") engine = Engine::Alu;
        else if (engine_tok == "valu") engine = Engine::Valu;
        else if (engine_tok == "load") engine = Engine::Load;
        else if (engine_tok == "store") engine = Engine::Store;
        else if (engine_tok == "flow") engine = Engine::Flow;
        else fail("unknown engine '" + std::string(engine_tok) + "'");

        const detail::OpName* found = nullptr;
        for (const auto& e : detail::kOpNames) {
            if (op_tok == e.name) { found = &e; break; }
        }
        if (!found) fail("unknown opcode '" + std::string(op_tok) + "'");
        Opcode op = found->op;
        if (!engine_accepts(engine, op)) {
            fail(std::string("opcode '") + std::string(op_tok) + "' not valid on engine '" +
                 std::string(engine_tok) + "'");
        }

        Instruction ins{engine, op};
        auto sig = op_signature(op);
        std::vector<Word> operands;
        if (sp != std::string_view::npos) {
            std::string_view rest = line.substr(sp + 1);
            size_t start = 0;
            while (start <= rest.size()) {
                size_t comma = rest.find(',', start);
                std::string_view tok = detail::trim(
                    rest.substr(start, comma == std::string_view::npos ? rest.size() - start
                                                                       : comma - start));
                if (!tok.empty()) {
                    Word v;
                    if (!detail::parse_u32(tok, v)) fail("malformed address '" + std::string(tok) + "'");
                    operands.push_back(v);
                }
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
        }
        int expected = sig.sources + (op == Opcode::Halt ? 0 : 1);
        if (static_cast<int>(operands.size()) != expected) {
            fail(std::string(op_tok) + " expects " + std::to_string(expected) + " operands, got " +
                 std::to_string(operands.size()));
        }
        if (op != Opcode::Halt) {
            ins.dest = operands[0];
            if (operands.size() > 1) ins.a = operands[1];
            if (operands.size() > 2) ins.b = operands[2];
            if (operands.size() > 3) ins.c = operands[3];
        }
        if (op == Opcode::LoadOffset && ins.b >= kVLen) fail("load_offset lane must be 0..7");
        prog.bundles.back().instructions.push_back(ins);
    }
    return prog;
}

inline std::string print_program(const Program& prog) {
    std::string out;
    out.reserve(prog.bundles.size() * 64 + prog.consts.size() * 24);
    for (const auto& ci : prog.consts) {
        out += "const ";
        out += std::to_string(ci.addr);
        out += ' ';
        out += std::to_string(ci.value);
        if (ci.splat) out += " xVLEN";
        out += '\n';
    }
    for (const auto& bundle : prog.bundles) {
        out += "bundle:\n";
        for (const auto& ins : bundle.instructions) {
            out += "  ";
            out += engine_name(ins.engine);
            out += '.';
            out += opcode_name(ins.opcode);
            if (ins.opcode != Opcode::Halt) {
                auto sig = op_signature(ins.opcode);
                out += ' ';
                out += std::to_string(ins.dest);
                const Word srcs[3] = {ins.a, ins.b, ins.c};
                for (int s = 0; s < sig.sources; ++s) {
                    out += ", ";
                    out += std::to_string(srcs[s]);
                }
            }
            out += '\n';
        }
    }
    return out;
}

// Materializes const lines into memory. The benchmark image is applied
// afterwards by the evaluator, so consts cannot pre-seed instance regions.
inline void apply_consts(const Program& prog, MachineState& state) {
    for (const auto& ci : prog.consts) {
        int span = ci.splat ? kVLen : 1;
        if (ci.addr + static_cast<size_t>(span) > state.memory.size()) {
            throw FormatError("const address out of range: " + std::to_string(ci.addr));
        }
        for (int l = 0; l < span; ++l) state.memory[ci.addr + l] = ci.value;
    }
}

} // namespace evolver::vliw
