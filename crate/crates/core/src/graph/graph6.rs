//! graph6 codec, short form only.
//!
//! Layout: one size byte `n + 63`, then the upper triangle of the adjacency
//! matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) packed six
//! bits per byte, most significant first, each byte offset by 63. The last
//! byte is zero-padded.

use super::{Graph, GraphError};

pub const GRAPH6_MAX_VERTICES: usize = 62;

const BIAS: u8 = 63;

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn graph6_encode(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(GraphError::UnsupportedSize(n));
    }
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(BIAS + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn graph6_decode(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.as_bytes();
    let Some(&head) = bytes.first() else {
        return Err(GraphError::EmptyGraph6);
    };
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(GraphError::ByteOutOfRange { offset, byte });
        }
    }
    if head == 126 {
        return Err(GraphError::LongForm);
    }
    let n = (head - BIAS) as usize;
    let need = body_len(n);
    let body = &bytes[1..];
    if body.len() < need {
        return Err(GraphError::Truncated { expected: need, found: body.len() });
    }
    if body.len() > need {
        return Err(GraphError::TrailingBytes { offset: 1 + need });
    }

    let total_bits = n * n.saturating_sub(1) / 2;
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    let pad = need * 6 - total_bits;
    if pad > 0 && (body[need - 1] - BIAS) & ((1u8 << pad) - 1) != 0 {
        return Err(GraphError::NonzeroPadding { offset: need });
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_adjacency(adj))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Hand-encoded per the nauty format description.
    #[test]
    fn k4_is_c_tilde() {
        let g = graph6_decode("C~").unwrap();
        assert_eq!(g, Graph::complete(4));
        assert_eq!(graph6_encode(&Graph::complete(4)).unwrap(), "C~");
    }

    #[test]
    fn single_vertex_and_single_edge() {
        assert_eq!(graph6_decode("@").unwrap(), Graph::empty(1));
        assert_eq!(graph6_encode(&Graph::empty(1)).unwrap(), "@");
        let e = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(graph6_encode(&e).unwrap(), "A_");
        assert_eq!(graph6_decode("A_").unwrap(), e);
        assert_eq!(graph6_encode(&Graph::empty(0)).unwrap(), "?");
    }

    #[test]
    fn path_p3_hand_encoding() {
        // edges 01, 12: bits x01=1, x02=0, x12=1 -> 101000 = 40 -> 'g'
        assert_eq!(graph6_encode(&Graph::path(3)).unwrap(), "Bg");
    }

    #[test]
    fn k55_encoding_is_stable() {
        let s = graph6_encode(&Graph::k55()).unwrap();
        assert_eq!(graph6_decode(&s).unwrap(), Graph::k55());
    }

    #[test]
    fn decode_errors_name_offsets() {
        assert_eq!(graph6_decode(""), Err(GraphError::EmptyGraph6));
        assert_eq!(
            graph6_decode("C~ "),
            Err(GraphError::ByteOutOfRange { offset: 2, byte: b' ' })
        );
        assert_eq!(
            graph6_decode("C"),
            Err(GraphError::Truncated { expected: 1, found: 0 })
        );
        assert_eq!(graph6_decode("C~~"), Err(GraphError::TrailingBytes { offset: 2 }));
        assert_eq!(graph6_decode("~??"), Err(GraphError::LongForm));
        // n = 2 has one data bit; the five padding bits must be zero.
        assert_eq!(graph6_decode("A`"), Err(GraphError::NonzeroPadding { offset: 1 }));
    }

    #[test]
    fn encode_rejects_large_graphs() {
        assert_eq!(
            graph6_encode(&Graph::empty(63)),
            Err(GraphError::UnsupportedSize(63))
        );
        assert!(graph6_encode(&Graph::empty(62)).is_ok());
    }
}
