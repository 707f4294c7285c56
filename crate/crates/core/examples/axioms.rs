//! Searches for axiom violations for each rule and prints the outcome next
//! to the known property table.

use seqrank::axioms::{search_counterexample, table_entry, AxiomId, SearchSpace};
use seqrank::RuleId;

fn main() -> seqrank::Result<()> {
    let space = SearchSpace { m_max: 4, n_max: 6 };
    let rules = RuleId::table_rules();
    print!("{:<16}", "");
    for r in &rules {
        print!(" {:>15}", r.to_string());
    }
    println!();
    for axiom in AxiomId::ALL {
        print!("{:<16}", axiom.name());
        for r in &rules {
            let found = search_counterexample(axiom, r, space, 1500, 5)?.counterexample.is_some();
            let mark = match (table_entry(axiom, r), found) {
                (Some(true), false) => "ok",
                (Some(false), true) => "violated",
                (Some(false), false) => "(not found)",
                (_, true) => "UNEXPECTED",
                (None, false) => "-",
            };
            print!(" {:>15}", mark);
        }
        println!();
    }
    Ok(())
}
