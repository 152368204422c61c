//! Reference tables shipped with the crate, and renderers that recompute them.

use crate::numerology::{delta, lh_params, NumerologyError, UniquenessTag};

pub const DELTA_TABLE: &str = include_str!("../data/delta_table.txt");
pub const AH_EXCEPTIONS: &str = include_str!("../data/ah_exceptions.txt");
pub const UNIQUENESS: &str = include_str!("../data/uniqueness.txt");

/// Columns of the tabulated leftover cases, in table order.
pub const DELTA_COLUMNS: [(u32, u32); 8] = [
    (4, 6),
    (4, 5),
    (4, 4),
    (4, 3),
    (5, 4),
    (5, 3),
    (6, 3),
    (7, 3),
];

/// Recomputes the table in the exact layout of [`DELTA_TABLE`].
pub fn render_delta_table() -> Result<String, NumerologyError> {
    let mut head = format!("{:>6}", "(d,n)");
    let mut gap = format!("{:>6}", "l-h");
    let mut hs = format!("{:>6}", "h");
    let mut ds = format!("{:>6}", "delta");
    for (d, n) in DELTA_COLUMNS {
        let (l, h) = lh_params(d, n)?;
        head += &format!("{:>7}", format!("({d},{n})"));
        gap += &format!("{:>7}", l - h);
        hs += &format!("{:>7}", h);
        ds += &format!("{:>7}", delta(d, n)?);
    }
    Ok(format!("{head}\n{gap}\n{hs}\n{ds}\n"))
}

fn data_lines(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().collect())
}

pub fn ah_exceptions() -> Vec<(u32, u32, u32)> {
    data_lines(AH_EXCEPTIONS)
        .map(|f| {
            let v: Vec<u32> = f.iter().map(|x| x.parse().expect("golden data")).collect();
            (v[0], v[1], v[2])
        })
        .collect()
}

pub fn uniqueness_table() -> Vec<(u32, u32, UniquenessTag)> {
    data_lines(UNIQUENESS)
        .map(|f| {
            let tag = match f[2] {
                "unique" => UniquenessTag::Unique,
                "not_unique" => UniquenessTag::NotUnique,
                "no_canonical_form" => UniquenessTag::NoCanonicalForm,
                _ => UniquenessTag::OutOfTheoremRange,
            };
            (f[0].parse().expect("golden data"), f[1].parse().expect("golden data"), tag)
        })
        .collect()
}
