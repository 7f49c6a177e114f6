#pragma once

#include "simcrew/agentcore/react.hpp"
#include "simcrew/crews/config.hpp"

#include <string>
#include <vector>

namespace simcrew::crews {

/// Team tool names; registered by the team runners, not by the toolbox.
inline constexpr const char* kDelegateTool = "delegate";
inline constexpr const char* kReadMemoryTool = "read_memory";
inline constexpr const char* kResearchTeamTool = "run_research_team";
inline constexpr const char* kSetupTeamTool = "run_setup_team";

/// System prompt and toolset for one of the names in crews::agents. Throws
/// Error(config) for an unknown agent.
agentcore::AgentConfig agent_config(const std::string& agent, const TeamConfig& config);

/// Setup-team sub-agents in delegation order.
const std::vector<std::string>& setup_stage_agents();

}  // namespace simcrew::crews
