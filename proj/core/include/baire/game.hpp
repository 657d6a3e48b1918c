#pragma once

// The Banach-Mazur game on multiplication tables. Players alternately write
// finitely many cells; after step n the block {1..n+1}^2 must be filled, each
// of the rows and columns 1..n+1 must contain a 1, and the table must still
// extend to a group. Eve moves on odd steps, Odd on even steps.

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "baire/abelian.hpp"
#include "baire/equations.hpp"
#include "baire/extend.hpp"
#include "baire/fingroup.hpp"
#include "baire/table.hpp"

namespace baire {

enum class Player { Eve, Odd };
enum class Mode { General, Abelian };

std::string_view to_string(Player p);
std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view s);

struct Move {
  std::vector<Cell> cells;
};

/// A finite group in which the table lives. Abelian witnesses are kept as
/// factor lists and multiplied coordinate-wise, so they can grow well past
/// the size of a stored Cayley table.
using WitnessGroup = std::variant<FinGroup, FinAbelian>;

std::uint64_t group_order(const WitnessGroup& g);
Label group_mul(const WitnessGroup& g, Label a, Label b);
Label group_inv(const WitnessGroup& g, Label a);
std::string group_name(const WitnessGroup& g);
bool group_is_abelian(const WitnessGroup& g);
/// Cayley table form, for searches. Throws LimitExceeded above 4096.
FinGroup group_table(const WitnessGroup& g);

inline constexpr std::uint64_t kMaxWitnessOrder = std::uint64_t{1} << 30;

struct Witness {
  WitnessGroup group;
  std::map<Label, Label> labeling;  // table label -> group element
};

/// labeling fixes 1, is injective, covers every label of t, and makes every
/// cell a true product.
bool verify_witness(const PartialTable& t, const Witness& w);

struct EmbedGoal {
  FinGroup group;
};
struct DivisibilityGoal {
  Label n = 1;
  std::uint64_t k = 1;
};
struct InverseGoal {
  Label n = 1;
};
struct SolveGoal {
  EqSystem system;  // constants are table labels
};
struct ClopenGoal {
  CellClopen clopen;
};

using Goal = std::variant<EmbedGoal, DivisibilityGoal, InverseGoal, SolveGoal, ClopenGoal>;

std::string describe(const Goal& g);

enum class MonitorStatus { Pending, Achieved, Impossible };

std::string_view to_string(MonitorStatus s);

struct Monitor {
  Goal goal;
  MonitorStatus status = MonitorStatus::Pending;
  std::optional<std::size_t> achieved_step;
  nlohmann::json evidence;  // what was checked against the cells
  std::string note;         // latest blocking diagnosis
};

/// Evidence a mover offers for a goal; checked against the cells, never
/// trusted.
struct GoalHint {
  std::size_t goal = 0;
  nlohmann::json evidence;
};

/// Checks a goal against t alone, using the hint first. Returns the
/// evidence on success.
std::optional<nlohmann::json> check_goal(const PartialTable& t, const Goal& goal, const nlohmann::json& hint = {});

struct GameConfig {
  Mode mode = Mode::General;
  ExtendBudget budget;
  std::size_t var_limit = kDefaultVarLimit;
  std::size_t consistency_order = kDefaultConsistencyOrder;
  std::uint64_t seed = 0;
  std::vector<Goal> schedule;
  bool permissive = false;
};

enum class Legality { Legal, Illegal, Unknown };

std::string_view to_string(Legality l);

struct LegalResult {
  Legality kind = Legality::Unknown;
  /// 1, 2 or 3 for the rule that failed; 0 for write-once or malformed
  /// moves, and for Legal.
  int rule = 0;
  std::string reason;
  std::optional<Witness> witness;
  std::optional<Certificate> certificate;
};

struct HistoryEntry {
  std::size_t step = 0;
  Player mover = Player::Eve;
  Move move;
  Legality verdict = Legality::Legal;
  std::string reason;
  std::optional<std::size_t> witness_ref;
};

/// One position. Fields are public for inspection; only apply() advances a
/// state.
struct GameState {
  GameConfig config;
  PartialTable table;
  std::size_t step = 1;  // the step about to be played
  std::vector<Monitor> monitors;
  std::vector<HistoryEntry> history;
  std::vector<Witness> witnesses;
  std::optional<std::size_t> current_witness;  // index into witnesses
  bool caveat = false;  // a move was admitted with an Unknown verdict

  explicit GameState(GameConfig cfg = {});

  Player to_move() const { return step % 2 == 1 ? Player::Eve : Player::Odd; }
  Mode mode() const { return config.mode; }
  const Witness* witness() const { return current_witness ? &witnesses[*current_witness] : nullptr; }
};

/// Rules (2) and (3) for step n on t; empty when both hold.
std::optional<std::pair<int, std::string>> check_block_rules(const PartialTable& t, std::size_t n);

/// Legality of m at the current step. A supplied witness is verified and
/// used if it checks out; otherwise the engine looks for one, first around
/// the current witness, then from scratch within the budget.
LegalResult legal(const GameState& s, const Move& m, const std::optional<Witness>& supplied = {});

/// Throws IllegalMove unless r is Legal (or Unknown in permissive mode).
GameState apply(GameState s, const Move& m, const LegalResult& r, const std::vector<GoalHint>& hints = {});

struct StrategyMove {
  Move move;
  std::optional<Witness> witness;
  std::vector<GoalHint> hints;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual StrategyMove next_move(const GameState& s) = 0;
  virtual std::string name() const = 0;
};

/// Raised by run() when a strategy's move is not Legal.
class StrategyFault : public Error {
 public:
  StrategyFault(Player mover, std::size_t step, const std::string& reason)
      : Error(ErrorKind::StrategyFault, std::string(to_string(mover)) + " at step " + std::to_string(step) + ": " +
                                            reason),
        mover_(mover),
        step_(step) {}

  Player mover() const { return mover_; }
  std::size_t step() const { return step_; }

 private:
  Player mover_;
  std::size_t step_;
};

/// Plays `steps` steps from s.
GameState run(GameState s, Strategy& eve, Strategy& odd, std::size_t steps);

/// Uniform choice among eight randomly drawn witness-backed move recipes.
std::unique_ptr<Strategy> random_legal(std::uint64_t seed);
/// Adds fresh labels every move to make witnesses and searches grow.
std::unique_ptr<Strategy> spoiler(std::uint64_t seed = 0);
/// Works through the monitors in schedule order, one achievable goal per
/// turn; blocked goals go to the back of the queue.
std::unique_ptr<Strategy> odd_scheduler();
/// Replays fixed moves without witnesses; an exhausted script plays the
/// minimal block-filling move.
std::unique_ptr<Strategy> scripted(std::vector<Move> moves);

/// Transcript: {config, moves, finalTable, monitors} plus "witnesses" when
/// requested.
nlohmann::json transcript_json(const GameState& s, const std::string& eve, const std::string& odd,
                               bool include_witnesses = false);

nlohmann::json monitors_json(const std::vector<Monitor>& monitors);

void to_json(nlohmann::json& j, const Goal& g);
void from_json(const nlohmann::json& j, Goal& g);
void to_json(nlohmann::json& j, const Witness& w);
void to_json(nlohmann::json& j, const Move& m);
void from_json(const nlohmann::json& j, Move& m);

/// {"mode": ..., "goals": [...]} or a bare goal array.
std::vector<Goal> parse_schedule(const nlohmann::json& j, Mode* mode = nullptr);

}  // namespace baire
