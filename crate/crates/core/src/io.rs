//! Plain-text graph and instance files (format version 1).
//!
//! Graph block: a header line `n m_edges`, then `m_edges` lines `u v cost`
//! with 0-based ids. An instance file is a graph block followed by a line
//! `m` and `m` lines `customer weight`. Reals are written with 17
//! significant digits (`%.17g`), which round-trips every `f64` exactly.
//! Blank lines are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError, NodeId};
use crate::instance::{Instance, InstanceError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid instance: {0}")]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl FormatError {
    /// 1-based line number for syntax and graph-invariant errors.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Syntax { line, .. } => Some(*line),
            _ => None,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Formats like C's `%.17g`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if !(-4..17).contains(&exp) {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    } else if exp >= 0 {
        let int_len = exp as usize + 1;
        if digits.len() <= int_len {
            out.push_str(digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(digits);
    }
    out
}

pub fn write_graph(out: &mut impl Write, graph: &Graph) -> io::Result<()> {
    writeln!(out, "{} {}", graph.node_count(), graph.edge_count())?;
    for (u, v, c) in graph.edges() {
        writeln!(out, "{u} {v} {}", format_real(c))?;
    }
    Ok(())
}

pub fn write_instance(out: &mut impl Write, instance: &Instance) -> io::Result<()> {
    write_graph(out, instance.graph())?;
    writeln!(out, "{}", instance.customer_count())?;
    for (&c, &w) in instance.customers().iter().zip(instance.weights()) {
        writeln!(out, "{c} {}", format_real(w))?;
    }
    Ok(())
}

pub fn instance_to_string(instance: &Instance) -> String {
    let mut buf = Vec::new();
    write_instance(&mut buf, instance).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn save_instance(path: impl AsRef<Path>, instance: &Instance) -> Result<(), FormatError> {
    let mut file = io::BufWriter::new(fs::File::create(path)?);
    write_instance(&mut file, instance)?;
    file.flush()?;
    Ok(())
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance, FormatError> {
    read_instance(io::BufReader::new(fs::File::open(path)?))
}

/// Non-blank lines with their 1-based line numbers.
struct Lines<R> {
    inner: io::Lines<R>,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R) -> Self {
        Self { inner: reader.lines(), number: 0 }
    }

    fn next_line(&mut self) -> Result<Option<(usize, String)>, FormatError> {
        for line in self.inner.by_ref() {
            self.number += 1;
            let line = line?;
            if !line.trim().is_empty() {
                return Ok(Some((self.number, line)));
            }
        }
        Ok(None)
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, String), FormatError> {
        self.next_line()?
            .ok_or_else(|| syntax(self.number + 1, format!("unexpected end of input, expected {what}")))
    }
}

fn fields<'a, const N: usize>(line: usize, text: &'a str, what: &str) -> Result<[&'a str; N], FormatError> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    parts
        .try_into()
        .map_err(|p: Vec<&'a str>| syntax(line, format!("expected {what} ({N} fields), found {} field(s)", p.len())))
}

fn parse_int(line: usize, s: &str, what: &str) -> Result<usize, FormatError> {
    s.parse().map_err(|_| syntax(line, format!("invalid {what} `{s}`")))
}

fn parse_real(line: usize, s: &str, what: &str) -> Result<f64, FormatError> {
    let x: f64 = s.parse().map_err(|_| syntax(line, format!("invalid {what} `{s}`")))?;
    if !x.is_finite() {
        return Err(syntax(line, format!("{what} must be finite")));
    }
    Ok(x)
}

fn read_graph_block<R: BufRead>(lines: &mut Lines<R>) -> Result<Graph, FormatError> {
    let (hline, header) = lines.expect_line("graph header `n m_edges`")?;
    let [n, m] = fields::<2>(hline, &header, "graph header `n m_edges`")?;
    let n = parse_int(hline, n, "node count")?;
    let m = parse_int(hline, m, "edge count")?;
    if n == 0 {
        return Err(syntax(hline, "node count must be positive"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut seen: HashSet<(NodeId, NodeId)> = HashSet::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines.expect_line("edge `u v cost`")?;
        let [u, v, c] = fields::<3>(line, &text, "edge `u v cost`")?;
        let u = parse_int(line, u, "node id")?;
        let v = parse_int(line, v, "node id")?;
        let c = parse_real(line, c, "edge cost")?;
        let invariant = |e: GraphError| syntax(line, e.to_string());
        if u >= n || v >= n {
            return Err(invariant(GraphError::NodeIdOutOfRange { id: u.max(v), n }));
        }
        if u == v {
            return Err(invariant(GraphError::SelfLoop(u)));
        }
        if c < 0.0 {
            return Err(invariant(GraphError::NegativeCost { u, v, cost: c }));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(invariant(GraphError::DuplicateEdge { u: u.min(v), v: u.max(v) }));
        }
        edges.push((u, v, c));
    }
    Ok(Graph::from_edges(n, &edges).expect("edges validated while parsing"))
}

pub fn read_graph(reader: impl BufRead) -> Result<Graph, FormatError> {
    let mut lines = Lines::new(reader);
    let graph = read_graph_block(&mut lines)?;
    expect_end(&mut lines)?;
    Ok(graph)
}

pub fn read_instance(reader: impl BufRead) -> Result<Instance, FormatError> {
    let mut lines = Lines::new(reader);
    let graph = read_graph_block(&mut lines)?;
    let (mline, text) = lines.expect_line("customer count")?;
    let [m] = fields::<1>(mline, &text, "customer count")?;
    let m = parse_int(mline, m, "customer count")?;
    let mut customers = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines.expect_line("customer `id weight`")?;
        let [c, w] = fields::<2>(line, &text, "customer `id weight`")?;
        let c = parse_int(line, c, "customer id")?;
        let w = parse_real(line, w, "customer weight")?;
        if c >= graph.node_count() {
            return Err(syntax(line, InstanceError::CustomerOutOfRange(c).to_string()));
        }
        if customers.contains(&c) {
            return Err(syntax(line, InstanceError::DuplicateCustomer(c).to_string()));
        }
        if w < 0.0 {
            return Err(syntax(line, InstanceError::InvalidWeight { customer: c, weight: w }.to_string()));
        }
        customers.push(c);
        weights.push(w);
    }
    expect_end(&mut lines)?;
    Ok(Instance::new(graph, customers, weights)?)
}

fn expect_end<R: BufRead>(lines: &mut Lines<R>) -> Result<(), FormatError> {
    match lines.next_line()? {
        None => Ok(()),
        Some((line, _)) => Err(syntax(line, "unexpected trailing content")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_lb_instance, gen_rrw};
    use proptest::prelude::*;

    fn parse(text: &str) -> Result<Instance, FormatError> {
        read_instance(text.as_bytes())
    }

    #[test]
    fn real_formatting_matches_printf() {
        // Expected strings produced by C printf("%.17g").
        let cases = [
            (1.0, "1"),
            (2.0, "2"),
            (0.5, "0.5"),
            (2.001, "2.0009999999999999"),
            (0.1, "0.10000000000000001"),
            (1e-5, "1.0000000000000001e-05"),
            (0.0001, "0.0001"),
            (123456.0, "123456"),
            (1e17, "1e+17"),
            (12345678901234567.0, "12345678901234568"),
            (0.3333333333333333, "0.33333333333333331"),
        ];
        for (x, s) in cases {
            assert_eq!(format_real(x), s, "{x}");
        }
    }

    #[test]
    fn lower_bound_file() {
        let inst = gen_lb_instance(0.5).unwrap();
        let text = instance_to_string(&inst);
        assert_eq!(
            text,
            "5 7\n0 1 2\n0 2 2\n0 3 2\n0 4 2.5\n1 4 1\n2 4 1\n3 4 1\n4\n0 1\n1 1\n2 1\n3 1\n"
        );
        assert_eq!(parse(&text).unwrap(), inst);
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse("5 x\n").unwrap_err();
        assert_eq!(e.line(), Some(1));
        let e = parse("3 2\n0 1 1\n0 1 2\n1\n0 1\n").unwrap_err();
        assert_eq!(e.line(), Some(3));
        assert!(e.to_string().contains("duplicate"));
        let e = parse("3 2\n0 1 1\n2 2 2\n1\n0 1\n").unwrap_err();
        assert_eq!(e.line(), Some(3));
        let e = parse("3 2\n0 1 1\n1 2 -1\n1\n0 1\n").unwrap_err();
        assert_eq!(e.line(), Some(3));
        let e = parse("3 2\n0 1 1\n1 5 1\n1\n0 1\n").unwrap_err();
        assert_eq!(e.line(), Some(3));
        let e = parse("3 2\n0 1 1\n1 2 1\n").unwrap_err();
        assert_eq!(e.line(), Some(4));
        let e = parse("3 2\n0 1 1\n1 2 1\n1\n0 1\nextra\n").unwrap_err();
        assert_eq!(e.line(), Some(6));
        let e = parse("3 2\n0 1 1\n1 2 1\n2\n0 1\n0 1\n").unwrap_err();
        assert_eq!(e.line(), Some(6));
    }

    #[test]
    fn disconnected_instance_is_rejected() {
        let e = parse("3 1\n0 1 1\n1\n0 1\n").unwrap_err();
        assert!(matches!(e, FormatError::Instance(InstanceError::Disconnected)));
    }

    #[test]
    fn graph_only_reader() {
        let g = read_graph("2 1\n\n0 1 0.25\n".as_bytes()).unwrap();
        assert_eq!(g.edge_cost(1, 0), Some(0.25));
    }

    proptest! {
        #[test]
        fn format_real_round_trips(x in 0.0f64..1e300) {
            prop_assert_eq!(format_real(x).parse::<f64>().unwrap(), x);
        }

        #[test]
        fn generated_instances_round_trip(n in 2usize..40, seed in any::<u64>(), m_frac in 0.0f64..1.0) {
            let m = 1 + ((n - 1) as f64 * m_frac) as usize;
            let inst = gen_rrw(n, m, seed).unwrap();
            prop_assert_eq!(parse(&instance_to_string(&inst)).unwrap(), inst);
        }
    }
}
