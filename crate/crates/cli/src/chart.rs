//! Plain-text tables and degree charts.

use std::collections::BTreeMap;

use etasphere::kwcalc::StemsTable;
use etasphere::steenrod::pages::BocksteinPage;

pub enum Chartable<'a> {
    Page(&'a BocksteinPage),
    Stems(&'a StemsTable),
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn pad(s: &str, w: usize) -> String {
    format!("{s}{}", " ".repeat(w.saturating_sub(width(s))))
}

/// Left-aligned columns separated by two spaces, with a dashed rule under
/// the header.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| width(h)).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(width(c));
        }
    }
    let render = |cells: Vec<&str>| {
        let line: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| pad(c, w)).collect();
        line.join("  ").trim_end().to_string()
    };
    let mut out = vec![render(headers.to_vec())];
    out.push(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "));
    for r in rows {
        out.push(render(r.iter().map(|s| s.as_str()).collect()));
    }
    out.join("\n") + "\n"
}

/// Grid with stems across. Rows are filtrations (top row highest) for a
/// page, and summands (one per row) for a stems table.
pub fn emit_chart(src: Chartable<'_>) -> String {
    match src {
        Chartable::Page(p) => page_chart(p),
        Chartable::Stems(t) => stems_chart(t),
    }
}

fn grid(corner: &str, columns: &[String], rows: &[(String, Vec<String>)]) -> String {
    let label_w = rows.iter().map(|(l, _)| width(l)).chain([width(corner)]).max().unwrap_or(0);
    let col_w: Vec<usize> = (0..columns.len())
        .map(|i| rows.iter().map(|(_, cs)| width(&cs[i])).chain([width(&columns[i])]).max().unwrap_or(1))
        .collect();
    let line = |label: &str, cells: Vec<&str>| {
        let mut s = format!("{} |", pad(label, label_w));
        for (c, w) in cells.iter().zip(&col_w) {
            s.push(' ');
            s.push_str(&pad(c, *w));
        }
        s.trim_end().to_string()
    };
    let mut out = vec![line(corner, columns.iter().map(|c| c.as_str()).collect())];
    let rule_len = label_w + 2 + col_w.iter().map(|w| w + 1).sum::<usize>();
    out.push("-".repeat(rule_len));
    for (label, cells) in rows {
        out.push(line(label, cells.iter().map(|c| c.as_str()).collect()));
    }
    out.join("\n") + "\n"
}

fn page_chart(p: &BocksteinPage) -> String {
    let mut dims: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for e in &p.entries {
        *dims.entry((e.s, e.f)).or_default() += e.dim;
    }
    let smax = dims.keys().map(|k| k.0).max();
    let fmax = dims.keys().map(|k| k.1).max();
    let corner = format!("E{} f\\s", p.page);
    let (Some(smax), Some(fmax)) = (smax, fmax) else {
        return grid(&corner, &[], &[]);
    };
    let columns: Vec<String> = (0..=smax).map(|s| s.to_string()).collect();
    let rows: Vec<(String, Vec<String>)> = (0..=fmax)
        .rev()
        .map(|f| {
            let cells = (0..=smax)
                .map(|s| match dims.get(&(s, f)) {
                    Some(d) => d.to_string(),
                    None => ".".to_string(),
                })
                .collect();
            (f.to_string(), cells)
        })
        .collect();
    grid(&corner, &columns, &rows)
}

fn stems_chart(t: &StemsTable) -> String {
    let summands: Vec<Vec<String>> = t
        .entries
        .iter()
        .map(|e| if e.formatted == "0" { vec![] } else { e.formatted.split(" ⊕ ").map(String::from).collect() })
        .collect();
    let depth = summands.iter().map(Vec::len).max().unwrap_or(0);
    let columns: Vec<String> = t.entries.iter().map(|e| e.degree.to_string()).collect();
    let rows: Vec<(String, Vec<String>)> = (0..depth)
        .map(|k| {
            let cells = summands.iter().map(|s| s.get(k).cloned().unwrap_or_else(|| ".".into())).collect();
            (format!("#{}", k + 1), cells)
        })
        .collect();
    grid("n", &columns, &rows)
}
