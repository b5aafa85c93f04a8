//! Aligned text rendering for the --table flag.

/// Two-column key/value block, keys padded to a common width.
pub fn kv(pairs: &[(&str, String)]) -> String {
    let w = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(&format!("{k:<w$}  {v}\n"));
    }
    out
}

/// Labeled grid: corner cell, column heads, then one row per row head.
/// Cells are right-aligned under their head.
pub fn grid(corner: &str, cols: &[String], rows: &[String], cells: &[Vec<String>]) -> String {
    let rw = rows
        .iter()
        .map(|r| r.len())
        .chain(std::iter::once(corner.len()))
        .max()
        .unwrap_or(0);
    let cws: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            cells
                .iter()
                .map(|r| r[j].len())
                .chain(std::iter::once(c.len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    out.push_str(&format!("{corner:<rw$}"));
    for (j, c) in cols.iter().enumerate() {
        out.push_str(&format!("  {c:>w$}", w = cws[j]));
    }
    out.push('\n');
    for (i, r) in rows.iter().enumerate() {
        out.push_str(&format!("{r:<rw$}"));
        for j in 0..cols.len() {
            out.push_str(&format!("  {v:>w$}", v = cells[i][j], w = cws[j]));
        }
        out.push('\n');
    }
    out
}

/// Grid with 1-based numeric heads on both axes, for plain matrices.
pub fn matrix(title: &str, entries: &[Vec<String>]) -> String {
    let rows: Vec<String> = (1..=entries.len()).map(|i| i.to_string()).collect();
    let ncols = entries.first().map_or(0, |r| r.len());
    let cols: Vec<String> = (1..=ncols).map(|j| j.to_string()).collect();
    grid(title, &cols, &rows, entries)
}
