//! The seven printed matrices, shared by the integration and acceptance tests.

#![allow(dead_code)]

pub const A5: &[&[i64]] = &[
    &[1, -3, 3, -1],
    &[-3, -26, -3, 0],
    &[3, -3, 0, 0],
    &[-1, 0, 0, 0],
];

pub const A11: &[&[i64]] = &[
    &[1, -3, 3, -1],
    &[-3, -10, -3, 0],
    &[3, -3, 0, 0],
    &[-1, 0, 0, 0],
];

pub const A23: &[&[i64]] = &[
    &[1, -3, 3, -1],
    &[-3, 2, -3, 0],
    &[3, -3, 0, 0],
    &[-1, 0, 0, 0],
];

pub const A31: &[&[i64]] = &[
    &[1, -4, 6, -4, 1],
    &[-4, 0, 0, -4, 0],
    &[6, 0, 6, 0, 0],
    &[-4, -4, 0, 0, 0],
    &[1, 0, 0, 0, 0],
];

pub const A19: &[&[i64]] = &[
    &[1, -5, 10, -10, 5, -1],
    &[-5, -92, -62, -92, -5, 0],
    &[10, -62, 62, -10, 0, 0],
    &[-10, -92, -10, 0, 0, 0],
    &[5, -5, 0, 0, 0, 0],
    &[-1, 0, 0, 0, 0, 0],
];

pub const A47: &[&[i64]] = &[
    &[1, -6, 15, -20, 15, -6, 1],
    &[-6, -10, 0, 0, -10, -6, 0],
    &[15, 0, -14, 0, 15, 0, 0],
    &[-20, 0, 0, -20, 0, 0, 0],
    &[15, -10, 15, 0, 0, 0, 0],
    &[-6, -6, 0, 0, 0, 0, 0],
    &[1, 0, 0, 0, 0, 0, 0],
];

pub const A13: &[&[i64]] = &[
    &[1, -7, 21, -35, 35, -21, 7, -1],
    &[-7, -3318, -31721, -60980, -31721, -3318, -7, 0],
    &[21, -31721, -11438, 11438, 31721, -21, 0, 0],
    &[-35, -60980, 11438, -60980, -35, 0, 0, 0],
    &[35, -31721, 31721, -35, 0, 0, 0, 0],
    &[-21, -3318, -21, 0, 0, 0, 0, 0],
    &[7, -7, 0, 0, 0, 0, 0, 0],
    &[-1, 0, 0, 0, 0, 0, 0, 0],
];

/// `(p, printed matrix)` in the order the tables appear.
pub const PRINTED: [(i64, &[&[i64]]); 7] = [
    (5, A5),
    (11, A11),
    (19, A19),
    (23, A23),
    (31, A31),
    (47, A47),
    (13, A13),
];

pub fn printed(p: i64) -> Vec<Vec<i64>> {
    let (_, rows) = PRINTED
        .iter()
        .find(|(q, _)| *q == p)
        .expect("printed prime");
    rows.iter().map(|r| r.to_vec()).collect()
}
