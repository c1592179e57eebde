//! Text formats: PACE-style graphs and tree decompositions, and embedding
//! maps. Vertices are 1-based in every file.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treewidth::TreeDecomposition;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Meaningful lines with their 1-based line numbers; `c` lines are comments.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t: Vec<&str> = l.split_whitespace().collect();
        match t.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, t)),
        }
    })
}

fn number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
}

fn vertex(tok: &str, line: usize, n: usize) -> Result<u32> {
    let v: usize = number(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok((v - 1) as u32)
}

/// Parses `p tw <n> <m>` followed by `u v` edge lines.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| parse_err(1, "missing header"))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "tw" {
        return Err(parse_err(hl, "expected header \"p tw <n> <m>\""));
    }
    let n: usize = number(header[2], hl, "vertex count")?;
    let m: usize = number(header[3], hl, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (ln, t) in it {
        if t.len() != 2 {
            return Err(parse_err(ln, "expected an edge \"u v\""));
        }
        let (u, v) = (vertex(t[0], ln, n)?, vertex(t[1], ln, n)?);
        if u == v {
            return Err(parse_err(ln, "self-loop"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(hl, format!("header announces {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, edges).map_err(|e| parse_err(hl, e.to_string()))?;
    if g.edge_count() != m {
        return Err(parse_err(hl, "duplicate edges"));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "p tw {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "{} {}", u + 1, v + 1).unwrap();
    }
    s
}

/// Parses `s td <bags> <width+1> <n>`, `b <id> <v…>` lines and tree edges.
pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| parse_err(1, "missing header"))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(parse_err(hl, "expected header \"s td <bags> <width+1> <n>\""));
    }
    let nb: usize = number(header[2], hl, "bag count")?;
    let size: usize = number(header[3], hl, "bag size")?;
    let n: usize = number(header[4], hl, "vertex count")?;
    let mut bags: Vec<Option<Vec<u32>>> = vec![None; nb];
    let mut edges = Vec::new();
    for (ln, t) in it {
        if t[0] == "b" {
            let id: usize = number(t.get(1).ok_or_else(|| parse_err(ln, "missing bag id"))?, ln, "bag id")?;
            if id == 0 || id > nb {
                return Err(parse_err(ln, format!("bag id {id} outside 1..={nb}")));
            }
            if bags[id - 1].is_some() {
                return Err(parse_err(ln, format!("bag {id} defined twice")));
            }
            let vs = t[2..].iter().map(|x| vertex(x, ln, n)).collect::<Result<Vec<_>>>()?;
            if vs.len() > size {
                return Err(parse_err(ln, format!("bag {id} has {} vertices, header allows {size}", vs.len())));
            }
            bags[id - 1] = Some(vs);
        } else {
            if t.len() != 2 {
                return Err(parse_err(ln, "expected a bag line or a tree edge"));
            }
            let (a, b) = (vertex(t[0], ln, nb)?, vertex(t[1], ln, nb)?);
            edges.push((a, b));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(hl, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition::new(bags, edges))
}

pub fn write_decomposition(td: &TreeDecomposition, n: usize) -> String {
    let mut s = String::new();
    let width1 = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    writeln!(s, "s td {} {} {}", td.bags.len(), width1, n).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(s, "b {}", i + 1).unwrap();
        for v in bag {
            write!(s, " {}", v + 1).unwrap();
        }
        s.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(s, "{} {}", a + 1, b + 1).unwrap();
    }
    s
}

/// One `guest host` line per guest vertex; `host` is whatever label the
/// caller supplies for the image.
pub fn write_mapping<L: std::fmt::Display>(labels: impl IntoIterator<Item = L>) -> String {
    let mut s = String::new();
    for (i, l) in labels.into_iter().enumerate() {
        writeln!(s, "{} {}", i + 1, l).unwrap();
    }
    s
}

/// Reads `guest host` lines with numeric host ids (1-based) into a 0-based
/// vector indexed by guest.
pub fn parse_mapping(text: &str, guests: usize) -> Result<Vec<u32>> {
    let mut out = vec![u32::MAX; guests];
    for (ln, t) in lines(text) {
        if t.len() != 2 {
            return Err(parse_err(ln, "expected \"guest host\""));
        }
        let g = vertex(t[0], ln, guests)?;
        let h: u32 = number(t[1], ln, "host vertex")?;
        if h == 0 {
            return Err(parse_err(ln, "host vertex 0"));
        }
        if out[g as usize] != u32::MAX {
            return Err(parse_err(ln, format!("guest {} mapped twice", g + 1)));
        }
        out[g as usize] = h - 1;
    }
    if let Some(g) = out.iter().position(|&h| h == u32::MAX) {
        return Err(parse_err(0, format!("guest {} unmapped", g + 1)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 3)]).unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "p tw 4 3\n1 2\n1 4\n2 3\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn graph_errors_name_lines() {
        assert_eq!(parse_graph("p tw 3 1\nc note\n1 4\n").unwrap_err(), Error::Parse { line: 3, message: "vertex 4 outside 1..=3".into() });
        assert!(matches!(parse_graph("p tw 3 2\n1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("q 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("p tw 3 1\n1 x\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn decomposition_round_trip() {
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let text = write_decomposition(&td, 3);
        assert_eq!(text, "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        assert_eq!(parse_decomposition(&text).unwrap(), td);
        assert!(matches!(parse_decomposition("s td 2 2 3\nb 1 1 2\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn mapping_round_trip() {
        let text = write_mapping([3u32, 1, 2]);
        assert_eq!(parse_mapping(&text, 3).unwrap(), vec![2, 0, 1]);
        assert!(parse_mapping("1 1\n1 2\n", 2).is_err());
    }
}
