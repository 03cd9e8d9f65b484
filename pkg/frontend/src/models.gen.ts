// Generated by scripts/sync-models.mjs — do not edit by hand.
export const BUNDLED_MODELS: Record<string, string> = {
  "abstract-contract-states": "# Abstract contract states: state groups modeled as sub-processes; the\n# transition events exclude the old state group and include the new one, so\n# activities are only executable while their group is included.\ngraph abstract_contract_states {\n  roles operator;\n  event idle;\n  event running excluded;\n  event configure roles [operator] in idle;\n  event start roles [operator] in idle;\n  event operate roles [operator] in running;\n  event stop roles [operator] in running;\n  exclude start -> idle;\n  include start -> running;\n  exclude stop -> running;\n  include stop -> idle;\n}\n",
  "access-control": "# Access control: role labels are first-class; configuration is owner-only\n# while the service itself is open to any caller once configured.\ngraph access_control {\n  roles owner, user;\n  event set_parameters roles [owner];\n  event use_service;\n  event withdraw_fees roles [owner];\n  condition set_parameters -> use_service;\n  condition use_service -> withdraw_fees;\n}\n",
  "automatic-deprecation": "# Automatic deprecation: the legacy entry point expires at a fixed time.\n# A timer event is due at the expiry instant (run it with an automatic agent\n# for the system role); firing it excludes the deprecated activity.\ngraph automatic_deprecation {\n  roles system, user;\n  event use_legacy_api roles [user];\n  event deprecate roles [system] pending P30D;\n  exclude deprecate -> use_legacy_api;\n  exclude deprecate -> deprecate;\n}\n",
  "casino": "# Casino case study: every activity lives in one sub-process which the\n# suicidal closeCasino excludes with a single arrow. Contract stages are\n# pure action ordering via include/exclude; timeoutBet becomes available\n# one day after placeBet so the operator is motivated to decide in time.\n# The reveal slot for the committed secret is decideBet's own value.\ngraph casino {\n  roles operator, player;\n  event casino;\n  event createGame input roles [operator] in casino;\n  event addToPot roles [operator] in casino;\n  event removeFromPot roles [operator] in casino;\n  event placeBet input excluded in casino;\n  event decideBet compute (createGame = hash(decideBet)) roles [operator] excluded in casino;\n  event timeoutBet roles [player] excluded in casino;\n  event closeCasino roles [operator] in casino;\n  include createGame -> placeBet;\n  exclude createGame -> createGame;\n  exclude createGame -> closeCasino;\n  include placeBet -> decideBet;\n  include placeBet -> timeoutBet;\n  response placeBet -> decideBet;\n  condition placeBet -> timeoutBet delay P1D;\n  exclude placeBet -> removeFromPot;\n  milestone decideBet -> placeBet;\n  exclude decideBet -> decideBet;\n  exclude decideBet -> timeoutBet;\n  exclude decideBet -> placeBet;\n  include decideBet -> createGame;\n  include decideBet -> removeFromPot;\n  include decideBet -> closeCasino;\n  cancel timeoutBet -> decideBet;\n  exclude timeoutBet -> decideBet;\n  exclude timeoutBet -> timeoutBet;\n  exclude timeoutBet -> placeBet;\n  include timeoutBet -> createGame;\n  include timeoutBet -> removeFromPot;\n  include timeoutBet -> closeCasino;\n  exclude closeCasino -> casino;\n}\n",
  "checks-effects-interactions": "# Checks-effects-interactions: the three phases run in strict order; each\n# phase disables itself and unlocks the next, and finishing the interaction\n# re-arms the cycle for the next transaction.\ngraph checks_effects_interactions {\n  roles contract;\n  event checks roles [contract];\n  event effects roles [contract] excluded;\n  event interactions roles [contract] excluded;\n  include checks -> effects;\n  exclude checks -> checks;\n  include effects -> interactions;\n  exclude effects -> effects;\n  include interactions -> checks;\n  exclude interactions -> interactions;\n}\n",
  "circuit-breaker": "# Circuit breaker: panic makes the breaker group pending and milestones\n# from the group freeze all trading; revive completes the group (clearing\n# the pending state), contingency additionally opens the escape hatch.\ngraph circuit_breaker {\n  roles user, monitor, admin;\n  event buy roles [user];\n  event sell roles [user];\n  event transfer roles [user];\n  event panic roles [monitor];\n  event circuit_breaker \"circuit breaker\";\n  event revive roles [admin] in circuit_breaker;\n  event contingency roles [admin] in circuit_breaker;\n  event escape_hatch \"escape hatch\" roles [admin] excluded;\n  response panic -> circuit_breaker;\n  milestone circuit_breaker -> buy;\n  milestone circuit_breaker -> sell;\n  milestone circuit_breaker -> transfer;\n  milestone circuit_breaker -> panic;\n  include contingency -> escape_hatch;\n}\n",
  "commit-and-reveal": "# Commit and reveal: commit a digest first, reveal the preimage later;\n# the decide computation compares commitment and hash of the reveal, and\n# guard-symmetric include/exclude pairs pick exactly one outcome branch.\ngraph commit_and_reveal {\n  event commit input;\n  event reveal input;\n  event decide compute (commit = hash(reveal));\n  event fail excluded;\n  event pass excluded;\n  condition commit -> reveal;\n  response commit -> reveal;\n  condition reveal -> decide;\n  response reveal -> decide;\n  milestone reveal -> commit;\n  milestone decide -> commit;\n  milestone fail -> commit;\n  milestone pass -> commit;\n  include decide -> pass guard (decide);\n  include decide -> fail guard (not decide);\n  exclude decide -> fail guard (decide);\n  exclude decide -> pass guard (not decide);\n}\n",
  "escapability": "# Escapability: an escape hatch whose logic is independent of the main\n# contract logic. Triggering it freezes deposits and makes draining the\n# funds to the hatch both possible and obligatory.\ngraph escapability {\n  roles admin, user;\n  event deposit roles [user];\n  event trigger_escape roles [admin];\n  event drain_to_escape_hatch roles [admin] excluded;\n  include trigger_escape -> drain_to_escape_hatch;\n  response trigger_escape -> drain_to_escape_hatch;\n  exclude trigger_escape -> deposit;\n  exclude trigger_escape -> trigger_escape;\n  exclude drain_to_escape_hatch -> drain_to_escape_hatch;\n}\n",
  "governance": "# Governance: members vote on one proposal at a time; voting must happen\n# within a week of proposing, and execution requires at least one vote.\ngraph governance {\n  roles member, executor;\n  event propose input roles [member];\n  event vote input roles [member] excluded;\n  event execute_proposal roles [executor] excluded;\n  exclude propose -> propose;\n  include propose -> vote;\n  response propose -> vote deadline P7D;\n  condition vote -> execute_proposal;\n  include vote -> execute_proposal;\n  include execute_proposal -> propose;\n  exclude execute_proposal -> vote;\n  exclude execute_proposal -> execute_proposal;\n}\n",
  "guard-check": "# Guard check: input validation gates progress through a guarded include; a\n# non-positive deposit never unlocks the withdrawal.\ngraph guard_check {\n  roles user;\n  event deposit input roles [user];\n  event withdraw roles [user] excluded;\n  include deposit -> withdraw guard (deposit > 0);\n}\n",
  "oracle": "# Oracle: the callback is excluded by default and becomes included and\n# pending once the contract registers a request; the delivered answer flows\n# onward over a value relation.\ngraph oracle {\n  roles contract, oracle;\n  event request_data roles [contract];\n  event callback input roles [oracle] excluded;\n  event use_data roles [contract] excluded;\n  include request_data -> callback;\n  response request_data -> callback;\n  condition callback -> use_data;\n  include callback -> use_data;\n  value callback -> use_data;\n}\n",
  "pull-over-push": "# Pull over push: the contract never sends funds as a side effect; it\n# allocates a claim (amount carried on the value relation) that the payee\n# withdraws in a transaction of their own.\ngraph pull_over_push {\n  roles contract, payee;\n  event allocate_payout input roles [contract];\n  event withdraw roles [payee] excluded;\n  include allocate_payout -> withdraw;\n  value allocate_payout -> withdraw;\n  exclude withdraw -> withdraw;\n}\n",
  "rate-limitation": "# Rate limitation: cap on the total withdrawn per period. withdraw makes\n# the accumulator computation due immediately; a system agent executes it,\n# adding the last withdrawal to the running total, and a permanent\n# self-response keeps it pending so the guarded milestone blocks withdraw\n# once the total reaches the limit. new_period runs on a one-day cycle and\n# copies 0 back into the accumulator over a value relation.\ngraph rate_limitation {\n  roles admin, system, user;\n  event set_limit \"set limit\" input roles [admin] value 100;\n  event new_period \"new period\" roles [system] executed pending P1D value 0;\n  event rate_limiter \"rate limiter\" compute (rate_limiter + withdraw) roles [system] pending value 0;\n  event withdraw input roles [user];\n  condition new_period -> new_period delay P1D;\n  response new_period -> new_period deadline P1D;\n  value new_period -> rate_limiter;\n  condition set_limit -> withdraw;\n  condition withdraw -> rate_limiter;\n  response withdraw -> rate_limiter deadline PT0S;\n  response rate_limiter -> rate_limiter;\n  milestone rate_limiter -> withdraw guard (rate_limiter >= set_limit);\n}\n",
  "safe-self-destruction": "# Safe self-destruction: only the admin role can destroy the contract, and\n# destruction removes every activity including itself.\ngraph safe_self_destruction {\n  roles admin, user;\n  event use_service roles [user];\n  event destroy roles [admin];\n  exclude destroy -> use_service;\n  exclude destroy -> destroy;\n}\n",
  "secure-ether-transfer": "# Secure Ether transfer: bookkeeping strictly alternates with the external\n# send so a reentrant call can never observe stale balances.\ngraph secure_ether_transfer {\n  roles contract;\n  event check_balance roles [contract];\n  event send roles [contract] excluded;\n  include check_balance -> send;\n  exclude check_balance -> check_balance;\n  exclude send -> send;\n  include send -> check_balance;\n}\n",
  "speed-bump": "# Speed bump: a critical action only becomes executable a fixed delay after\n# it was requested, leaving a monitoring window to intervene.\ngraph speed_bump {\n  roles user;\n  event request roles [user];\n  event act roles [user];\n  condition request -> act delay P2D;\n}\n",
  "time-constraint": "# Time constraint: an action stays unavailable until a fixed delay after an\n# enabling action happened, expressed as a delayed condition.\ngraph time_constraint {\n  roles admin, user;\n  event open_enrollment roles [admin];\n  event claim_reward roles [user];\n  condition open_enrollment -> claim_reward delay P7D;\n}\n",
  "time-incentivization": "# Time incentivization: the fine becomes available one month after the\n# loan unless the client pays in the meantime, which excludes the fine.\ngraph time_incentivization {\n  roles bank, client;\n  event give_loan \"give loan\" roles [bank];\n  event pay_loan \"pay loan\" roles [client] excluded;\n  event fine roles [bank] excluded;\n  include give_loan -> pay_loan;\n  include give_loan -> fine;\n  condition give_loan -> fine delay P1M;\n  exclude pay_loan -> fine;\n}\n",
  "token": "# Token: partial ordering of the ERC-20 surface; minting unlocks transfers\n# and approvals, and each approval permits one delegated transfer.\ngraph token {\n  roles owner, holder, spender;\n  event mint input roles [owner];\n  event transfer input roles [holder] excluded;\n  event approve input roles [holder] excluded;\n  event transfer_from input roles [spender] excluded;\n  include mint -> transfer;\n  include mint -> approve;\n  include approve -> transfer_from;\n  exclude transfer_from -> transfer_from;\n}\n",
  "upgradability": "# Upgradability: a registry records each new implementation version (the\n# version number travels on the value relation) and repointing the proxy is\n# required and only possible after a registration; user calls always go\n# through the proxy.\ngraph upgradability {\n  roles admin, user;\n  event register_version input roles [admin];\n  event upgrade_proxy roles [admin] excluded;\n  event call_via_proxy roles [user];\n  include register_version -> upgrade_proxy;\n  response register_version -> upgrade_proxy;\n  value register_version -> upgrade_proxy;\n  exclude upgrade_proxy -> upgrade_proxy;\n}\n",
};
