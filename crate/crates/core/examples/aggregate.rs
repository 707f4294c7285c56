//! Runs every built-in rule on a small profile under one tie-break order.

use seqrank::rules::{run_rule, run_trace, tie_round_count};
use seqrank::{Profile, RuleId, ScoringSystem, TieBreakOrder};

fn main() -> seqrank::Result<()> {
    // 3 × a≻b≻c, 2 × b≻c≻a, 2 × c≻b≻a
    let p = Profile::from_groups(3, &[(3, &[0, 1, 2]), (2, &[1, 2, 0]), (2, &[2, 1, 0])])?;
    let tie = TieBreakOrder::identity(3);
    let mut rules = vec![RuleId::Kemeny];
    for s in [ScoringSystem::Plurality, ScoringSystem::Veto, ScoringSystem::Borda] {
        rules.push(RuleId::Score(s.clone()));
        rules.push(RuleId::SeqWinner(s.clone()));
        rules.push(RuleId::SeqLoser(s));
    }
    for rule in &rules {
        let out = run_rule(rule, &p, &tie)?;
        let ties = match rule {
            RuleId::Kemeny => String::new(),
            _ => format!("  ({} tied rounds)", tie_round_count(&run_trace(rule, &p, &tie)?)),
        };
        println!("{:<18} {}{}", rule.to_string(), out, ties);
    }
    Ok(())
}
