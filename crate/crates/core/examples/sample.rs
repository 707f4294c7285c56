//! Draws profiles from the three cultures and reports how spread out the
//! votes are (mean normalized swap distance to the identity).

use seqrank::ranking::normalized_swap_distance_f64;
use seqrank::sampling::{sample_euclidean, sample_impartial_culture, sample_mallows, MallowsParams};
use seqrank::{Profile, Ranking};

fn spread(p: &Profile) -> f64 {
    let id = Ranking::identity(p.num_candidates());
    let total: f64 = p.voters().map(|v| normalized_swap_distance_f64(v, &id).unwrap()).sum();
    total / p.num_voters() as f64
}

fn main() -> seqrank::Result<()> {
    for norm_phi in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let p = sample_mallows(&MallowsParams::identity(10, norm_phi)?, 500, 1);
        println!("mallows norm-phi {:.2}: mean distance {:.3}", norm_phi, spread(&p));
    }
    println!("impartial culture:      mean distance {:.3}", spread(&sample_impartial_culture(10, 500, 1)));
    println!("euclidean 2d:           mean distance {:.3}", spread(&sample_euclidean(2, 10, 500, 1)?));
    Ok(())
}
