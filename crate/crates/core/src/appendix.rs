//! The thirteen bad-part batches, with their published counts.

use serde::Serialize;

use crate::contfrac::ChainWeights;
use crate::embeddings::{all_config, AllConfigReport};
use crate::error::Result;

#[derive(Debug, Clone, Serialize)]
pub struct AppendixCase {
    pub id: usize,
    pub bad: Vec<u32>,
    /// 1-based.
    pub bad_positions: Vec<usize>,
    pub lefts: Vec<Vec<u32>>,
    pub rights: Vec<Vec<u32>>,
    /// (total, standard, semi-standard, neither)
    pub expected: (usize, usize, usize, usize),
}

impl AppendixCase {
    pub fn run(&self) -> Result<AllConfigReport> {
        let cw = |v: &Vec<u32>| ChainWeights::new(v.clone());
        let lefts = self.lefts.iter().map(cw).collect::<Result<Vec<_>>>()?;
        let rights = self.rights.iter().map(cw).collect::<Result<Vec<_>>>()?;
        all_config(&ChainWeights::new(self.bad.clone())?, &self.bad_positions, &lefts, &rights)
    }
}

fn v(lists: &[&[u32]]) -> Vec<Vec<u32>> {
    lists.iter().map(|l| l.to_vec()).collect()
}

pub fn appendix_cases() -> Vec<AppendixCase> {
    let lefts1 = v(&[
        &[2, 2, 2],
        &[2, 3, 2, 2],
        &[3, 3, 2, 2],
        &[2, 4, 3, 2, 2],
        &[2],
        &[2, 2, 2, 3],
        &[2, 3, 2, 2, 3],
        &[2, 3, 3, 2, 2, 3],
    ]);
    let rights1 = v(&[
        &[2, 2, 2],
        &[2, 2, 3, 2],
        &[2, 2, 3, 3],
        &[2, 2, 3, 4, 2],
        &[2],
        &[3, 2, 2, 2],
        &[3, 2, 2, 3, 2],
        &[3, 2, 2, 3, 3, 2],
    ]);
    let rights2 = v(&[&[2, 2, 2, 2], &[2, 2, 2, 3], &[2], &[3, 2, 2, 2], &[3, 2, 2, 3, 2, 2]]);
    let lefts4 = v(&[&[2, 2, 2], &[2, 3, 2, 2], &[2, 2, 3, 3, 2, 2]]);
    let rights4 = v(&[&[2, 2, 2], &[2, 2, 3, 2], &[2, 2, 3, 3, 2, 2]]);
    let pair6 = v(&[&[2, 2, 2], &[2, 2, 3, 2, 2]]);
    let lefts8 = v(&[
        &[2, 2, 2],
        &[2, 3, 2, 2],
        &[2, 3, 3, 2, 2],
        &[2],
        &[2, 2, 2, 3],
        &[2, 3, 2, 2, 3],
        &[2, 3, 3, 2, 2, 3],
    ]);
    let lefts2 = v(&[&[2, 2, 2], &[2, 3, 2, 2], &[2, 3, 3, 2, 2]]);
    let case = |id, bad: &[u32], pos: &[usize], lefts: &Vec<Vec<u32>>, rights: &Vec<Vec<u32>>, expected| {
        AppendixCase {
            id,
            bad: bad.to_vec(),
            bad_positions: pos.to_vec(),
            lefts: lefts.clone(),
            rights: rights.clone(),
            expected,
        }
    };
    vec![
        case(1, &[2, 2, 2], &[2], &lefts1, &rights1, (386, 203, 183, 0)),
        case(2, &[2, 2, 3], &[2], &lefts2, &rights2, (84, 48, 36, 0)),
        case(
            3,
            &[2, 2, 4],
            &[2],
            &pair6,
            &v(&[&[2, 2, 2, 2, 2], &[2, 2, 2, 2, 3], &[2], &[3, 2, 2, 2, 2], &[3, 2, 2, 2, 3]]),
            (64, 32, 32, 0),
        ),
        case(4, &[2, 3, 2], &[2], &lefts4, &rights4, (50, 25, 25, 0)),
        case(
            5,
            &[2, 3, 3],
            &[2],
            &lefts4,
            &v(&[&[2, 2, 2, 2], &[2, 2, 2, 3, 2], &[2, 2, 2, 3, 3, 2]]),
            (60, 30, 30, 0),
        ),
        case(6, &[2, 4, 2], &[2], &pair6, &pair6, (32, 16, 16, 0)),
        case(7, &[2, 2, 3, 2, 2], &[2, 4], &lefts1, &rights1, (589, 203, 386, 0)),
        case(8, &[2, 2, 3, 2, 3], &[2, 4], &lefts8, &rights2, (264, 96, 168, 0)),
        case(9, &[2, 2, 3, 3, 2], &[2, 4], &lefts8, &rights4, (160, 50, 110, 0)),
        case(
            10,
            &[2, 2, 3, 3, 3],
            &[2, 4],
            &lefts2,
            &v(&[&[2, 2, 2, 2], &[2, 2, 2, 3, 2], &[2, 2, 2, 3, 3, 2]]),
            (108, 36, 72, 0),
        ),
        case(11, &[2, 3, 3, 2], &[2, 3], &lefts4, &rights4, (75, 25, 50, 0)),
        case(12, &[2, 3, 3, 3, 2], &[2, 3, 4], &lefts4, &rights4, (100, 25, 75, 0)),
        case(13, &[2, 3, 4, 2], &[2, 3], &pair6, &pair6, (48, 16, 32, 0)),
    ]
}

pub fn appendix_case(id: usize) -> Option<AppendixCase> {
    appendix_cases().into_iter().find(|c| c.id == id)
}
