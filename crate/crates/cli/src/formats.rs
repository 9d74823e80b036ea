//! Wire formats: graph6 lines, the JSON graph schema, and the JSON string
//! isomorphism instance schema.

use std::fmt;

use isokit_core::perm::{Perm, PermGroup};
use isokit_core::si::{GString, SIInstance};
use isokit_core::ColoredGraph;
use serde::{Deserialize, Serialize};

/// Parse failure with the byte offset where decoding stopped making sense.
#[derive(Debug)]
pub struct FormatError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte offset {}", self.message, self.offset)
    }
}

impl std::error::Error for FormatError {}

fn format_error(offset: usize, message: impl Into<String>) -> FormatError {
    FormatError { offset, message: message.into() }
}

const GRAPH6_MAX_N: usize = 1 << 18;

/// Decodes one graph6 line (standard 6-bit encoding, printable bytes offset
/// by 63) into an uncolored graph.
pub fn parse_graph6(text: &str) -> Result<ColoredGraph, FormatError> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(format_error(0, "empty graph6 line"));
    }
    let sextet = |offset: usize| -> Result<u64, FormatError> {
        match bytes.get(offset) {
            None => Err(format_error(offset, "truncated graph6 line")),
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
            Some(&b) => Err(format_error(offset, format!("invalid graph6 byte {b:#04x}"))),
        }
    };
    let (n, mut offset) = if bytes[0] == 126 {
        if bytes.get(1) == Some(&126) {
            let mut n: u64 = 0;
            for i in 2..8 {
                n = (n << 6) | sextet(i)?;
            }
            (n as usize, 8)
        } else {
            let n = (sextet(1)? << 12) | (sextet(2)? << 6) | sextet(3)?;
            (n as usize, 4)
        }
    } else {
        (sextet(0)? as usize, 1)
    };
    if n > GRAPH6_MAX_N {
        return Err(format_error(0, format!("graph6 order {n} exceeds the cap {GRAPH6_MAX_N}")));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut bit = 0usize;
    let mut current: u64 = 0;
    let mut have = 0usize;
    for j in 1..n as u32 {
        for i in 0..j {
            if have == 0 {
                current = sextet(offset)?;
                offset += 1;
                have = 6;
            }
            have -= 1;
            if (current >> have) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    debug_assert_eq!(bit, bits);
    // padding bits of the last sextet must be zero
    if have > 0 && current & ((1 << have) - 1) != 0 {
        return Err(format_error(offset - 1, "non-zero padding bits"));
    }
    if offset != bytes.len() {
        return Err(format_error(offset, "trailing bytes after graph6 payload"));
    }
    ColoredGraph::new(n, &edges).map_err(|e| format_error(0, e.to_string()))
}

/// Encodes the edge structure as a graph6 line (colors are not
/// representable in graph6 and are dropped).
pub fn emit_graph6(g: &ColoredGraph) -> Result<String, FormatError> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(format_error(0, format!("graph6 order {n} exceeds the cap {GRAPH6_MAX_N}")));
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        out.push(126);
        out.push(126);
        for shift in (0..6).rev() {
            out.push(((n >> (6 * shift)) & 63) as u8 + 63);
        }
    }
    let mut current = 0u8;
    let mut have = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            current = (current << 1) | g.has_edge(i, j) as u8;
            have += 1;
            if have == 6 {
                out.push(current + 63);
                current = 0;
                have = 0;
            }
        }
    }
    if have > 0 {
        out.push((current << (6 - have)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable"))
}

/// The JSON graph schema: `{n, edges, vertex_colors?, arc_colors?}` with
/// arc colors as `[v, w, color]` triples on ordered pairs.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex_colors: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arc_colors: Option<Vec<(u32, u32, u32)>>,
}

pub fn parse_json_graph(text: &str) -> Result<ColoredGraph, FormatError> {
    let parsed: GraphJson = serde_json::from_str(text)
        .map_err(|e| format_error(e.column().saturating_sub(1), e.to_string()))?;
    ColoredGraph::with_colors(
        parsed.n,
        &parsed.edges,
        parsed.vertex_colors.as_deref(),
        parsed.arc_colors.as_deref().unwrap_or(&[]),
    )
    .map_err(|e| format_error(0, e.to_string()))
}

pub fn emit_json_graph(g: &ColoredGraph) -> String {
    let vertex_colors = g.vertex_colors();
    let arcs = {
        let mut arcs = g.colored_arcs();
        arcs.sort_unstable();
        arcs
    };
    let doc = GraphJson {
        n: g.n(),
        edges: g.edges(),
        vertex_colors: vertex_colors.iter().any(|&c| c != 0).then(|| vertex_colors.to_vec()),
        arc_colors: (!arcs.is_empty()).then_some(arcs),
    };
    serde_json::to_string(&doc).expect("graph serialization is infallible")
}

/// JSON schema for string isomorphism instances:
/// `{domain, alphabet, x, y, generators, shift?, window?}`.
#[derive(Serialize, Deserialize)]
struct SiJson {
    domain: usize,
    alphabet: usize,
    x: Vec<u32>,
    y: Vec<u32>,
    generators: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<Vec<u32>>,
}

pub fn parse_si_instance(text: &str) -> Result<SIInstance, FormatError> {
    let parsed: SiJson = serde_json::from_str(text)
        .map_err(|e| format_error(e.column().saturating_sub(1), e.to_string()))?;
    let build = || -> isokit_core::Result<SIInstance> {
        let x = GString::new(parsed.alphabet, parsed.x.clone())?;
        let y = GString::new(parsed.alphabet, parsed.y.clone())?;
        let gens: isokit_core::Result<Vec<Perm>> =
            parsed.generators.iter().map(|im| Perm::from_images(im.clone())).collect();
        let group = PermGroup::new(parsed.domain, gens?)?;
        let shift = match &parsed.shift {
            None => Perm::identity(parsed.domain),
            Some(im) => Perm::from_images(im.clone())?,
        };
        let window = parsed.window.clone().unwrap_or_else(|| (0..parsed.domain as u32).collect());
        SIInstance::new(x, y, group, shift, window)
    };
    build().map_err(|e| format_error(0, e.to_string()))
}

pub fn emit_si_instance(inst: &SIInstance) -> String {
    let doc = SiJson {
        domain: inst.group.degree(),
        alphabet: inst.x.alphabet_size(),
        x: inst.x.values().to_vec(),
        y: inst.y.values().to_vec(),
        generators: inst.group.generators().iter().map(|g| g.images().to_vec()).collect(),
        shift: (!inst.shift.is_identity()).then(|| inst.shift.images().to_vec()),
        window: Some(inst.window.clone()),
    };
    serde_json::to_string(&doc).expect("instance serialization is infallible")
}

/// JSON schema for permutation groups: `{degree, generators}`.
#[derive(Serialize, Deserialize)]
struct GroupJson {
    degree: usize,
    generators: Vec<Vec<u32>>,
}

pub fn parse_group(text: &str) -> Result<PermGroup, FormatError> {
    let parsed: GroupJson = serde_json::from_str(text)
        .map_err(|e| format_error(e.column().saturating_sub(1), e.to_string()))?;
    let build = || -> isokit_core::Result<PermGroup> {
        let gens: isokit_core::Result<Vec<Perm>> =
            parsed.generators.iter().map(|im| Perm::from_images(im.clone())).collect();
        PermGroup::new(parsed.degree, gens?)
    };
    build().map_err(|e| format_error(0, e.to_string()))
}

pub fn emit_group(group: &PermGroup) -> String {
    let doc = GroupJson {
        degree: group.degree(),
        generators: group.generators().iter().map(|g| g.images().to_vec()).collect(),
    };
    serde_json::to_string(&doc).expect("group serialization is infallible")
}
