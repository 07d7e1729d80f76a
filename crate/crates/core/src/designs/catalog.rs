//! Small designs used throughout: constructed where a construction is
//! one line, tabulated otherwise.

use alloc::vec::Vec;

use super::BlockDesign;

/// Planes of AG(3,2): the 14 four-sets {a,b,c,d} ⊂ 𝔽₂³ with a+b+c+d = 0.
pub fn sqs8() -> BlockDesign {
    let mut blocks = Vec::new();
    for a in 0..8usize {
        for b in a + 1..8 {
            for c in b + 1..8 {
                let d = a ^ b ^ c;
                if d > c {
                    blocks.push(alloc::vec![a, b, c, d]);
                }
            }
        }
    }
    BlockDesign::new(8, blocks).expect("AG(3,2) planes")
}

/// Fano plane as the development of {0,1,3} mod 7.
pub fn fano() -> BlockDesign {
    let blocks = (0..7).map(|i| [0, 1, 3].iter().map(|d| (d + i) % 7).collect()).collect();
    BlockDesign::new(7, blocks).expect("Fano plane")
}

const S3_4_10: [[usize; 4]; 30] = [
    [0, 1, 2, 3],
    [0, 1, 4, 5],
    [0, 1, 6, 7],
    [0, 1, 8, 9],
    [0, 2, 4, 6],
    [0, 2, 5, 8],
    [0, 2, 7, 9],
    [0, 3, 4, 9],
    [0, 3, 5, 7],
    [0, 3, 6, 8],
    [0, 4, 7, 8],
    [0, 5, 6, 9],
    [1, 2, 4, 7],
    [1, 2, 5, 9],
    [1, 2, 6, 8],
    [1, 3, 4, 8],
    [1, 3, 5, 6],
    [1, 3, 7, 9],
    [1, 4, 6, 9],
    [1, 5, 7, 8],
    [2, 3, 4, 5],
    [2, 3, 6, 9],
    [2, 3, 7, 8],
    [2, 4, 8, 9],
    [2, 5, 6, 7],
    [3, 4, 6, 7],
    [3, 5, 8, 9],
    [4, 5, 6, 8],
    [4, 5, 7, 9],
    [6, 7, 8, 9],
];

/// The Steiner system S(3,4,10) (inversive plane of order 3).
pub fn inversive_plane_10() -> BlockDesign {
    BlockDesign::new(10, S3_4_10.iter().map(|b| b.to_vec()).collect()).expect("S(3,4,10)")
}

const SYM_25_9_3: [[usize; 9]; 25] = [
    [0, 1, 2, 3, 4, 5, 6, 7, 8],
    [0, 1, 2, 9, 10, 11, 12, 13, 14],
    [0, 3, 4, 9, 10, 15, 16, 17, 18],
    [0, 5, 6, 11, 12, 15, 16, 19, 20],
    [0, 7, 8, 13, 14, 15, 17, 19, 21],
    [0, 7, 8, 9, 11, 18, 20, 22, 23],
    [0, 5, 6, 10, 13, 18, 21, 22, 24],
    [0, 1, 3, 14, 16, 20, 21, 23, 24],
    [0, 2, 4, 12, 17, 19, 22, 23, 24],
    [1, 4, 7, 10, 12, 18, 19, 20, 21],
    [1, 5, 8, 12, 14, 16, 17, 18, 22],
    [1, 3, 6, 9, 13, 17, 19, 20, 22],
    [1, 2, 6, 11, 15, 17, 18, 21, 23],
    [1, 4, 7, 11, 13, 15, 16, 22, 24],
    [1, 5, 8, 9, 10, 15, 19, 23, 24],
    [2, 3, 8, 10, 11, 16, 19, 21, 22],
    [2, 4, 5, 9, 14, 15, 20, 21, 22],
    [2, 5, 7, 10, 13, 16, 17, 20, 23],
    [2, 6, 7, 9, 14, 16, 18, 19, 24],
    [2, 3, 8, 12, 13, 15, 18, 20, 24],
    [3, 4, 5, 11, 13, 14, 18, 19, 23],
    [3, 6, 7, 10, 12, 14, 15, 22, 23],
    [3, 5, 7, 9, 11, 12, 17, 21, 24],
    [4, 6, 8, 9, 12, 13, 16, 21, 23],
    [4, 6, 8, 10, 11, 14, 17, 20, 24],
];

/// A symmetric 2-(25,9,3) design.
pub fn symmetric_25_9_3() -> BlockDesign {
    BlockDesign::new(25, SYM_25_9_3.iter().map(|b| b.to_vec()).collect()).expect("2-(25,9,3)")
}
