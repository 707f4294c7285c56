//! Lists the full set of rankings each sequential rule can select, i.e. the
//! outcomes over all tie-break orders.

use seqrank::rules::enumerate_selected;
use seqrank::{Profile, RuleId};

fn main() -> seqrank::Result<()> {
    let p = Profile::from_groups(3, &[(3, &[0, 1, 2]), (2, &[1, 2, 0]), (2, &[2, 1, 0])])?;
    for rule in RuleId::sequential_built_ins() {
        let set = enumerate_selected(&rule, &p)?;
        let shown: Vec<String> = set.iter().map(|r| format!("[{}]", r)).collect();
        println!("{:<18} {}", rule.to_string(), shown.join(" "));
    }
    Ok(())
}
