use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::scheme::{authorized_witness, cc_generators, unauthorized_witness, CcScheme};
use super::{mask_to_set, set_to_mask, AccessError, AccessStructure, CLASSIFY_CAP};
use crate::graph::VertexSet;
use crate::oracle::{self, check_authorized_dense, check_unauthorized_dense, DEFAULT_TOL};

/// Which decision procedure labels the subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// The two linear systems for decoding and blocking sets.
    Graphical,
    /// Supersets of the minimal encoded-Z supports.
    Generators,
    /// Dense reduced states and cross terms.
    Oracle,
    /// All three, which must agree.
    All,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Graphical => "graphical",
            Self::Generators => "generators",
            Self::Oracle => "oracle",
            Self::All => "all",
        }
    }

    /// Largest player count the method handles.
    pub fn cap(self) -> usize {
        match self {
            Self::Graphical => CLASSIFY_CAP,
            Self::Generators => CLASSIFY_CAP.min(crate::code::DEFAULT_ENUMERATION_CAP),
            Self::Oracle | Self::All => oracle::CLASSIFY_CAP,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "graphical" => Ok(Self::Graphical),
            "generators" => Ok(Self::Generators),
            "oracle" => Ok(Self::Oracle),
            "all" => Ok(Self::All),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// Evidence for a subset's label, in vertex indices of the scheme graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "set", rename_all = "lowercase")]
pub enum Witness {
    /// `D ⊆ S` with `Odd(D) ⊆ S` and `|D ∩ A|` odd.
    Decoder(VertexSet),
    /// `K ⊆ V∖S` with `Odd(K) ∩ S = A ∩ S`.
    Blocker(VertexSet),
    /// A minimal encoded-Z support inside `S`.
    Generator(VertexSet),
}

/// Label of every subset of players, indexed by bit mask over vertex indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    players: Vec<usize>,
    method: Method,
    authorized: Vec<bool>,
    witnesses: Vec<Option<Witness>>,
}

impl Classification {
    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[usize] {
        &self.players
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn is_authorized_mask(&self, mask: u64) -> bool {
        self.authorized[mask as usize]
    }

    /// Whether the vertex set `s` is authorized.
    pub fn is_authorized(&self, s: &VertexSet) -> bool {
        self.is_authorized_mask(set_to_mask(s))
    }

    pub fn witness(&self, mask: u64) -> Option<&Witness> {
        self.witnesses[mask as usize].as_ref()
    }

    pub fn authorized_count(&self) -> usize {
        self.authorized.iter().filter(|&&a| a).count()
    }

    /// Authorized sets all of whose one-smaller subsets are unauthorized.
    pub fn minimal_structure(&self) -> AccessStructure {
        let minimal = (0..self.authorized.len() as u64).filter(|&m| {
            self.authorized[m as usize]
                && (0..self.players.len())
                    .filter(|b| m >> b & 1 == 1)
                    .all(|b| !self.authorized[(m & !(1 << b)) as usize])
        });
        AccessStructure::new(
            self.players.clone(),
            minimal.map(|m| mask_to_set(m).into_iter().map(|v| self.players[v]).collect()),
        )
    }

    /// Whether authorization is closed under taking supersets.
    pub fn is_monotone(&self) -> bool {
        (0..self.authorized.len()).all(|m| {
            !self.authorized[m]
                || (0..self.players.len()).all(|b| self.authorized[m | 1 << b])
        })
    }
}

/// True iff for every subset exactly one of it and its complement is authorized.
pub fn check_perfect(c: &Classification) -> bool {
    let full = c.authorized.len() - 1;
    (0..c.authorized.len()).all(|m| c.authorized[m] != c.authorized[full ^ m])
}

/// Labels all `2^n` subsets of the scheme's players.
pub fn classify(scheme: &CcScheme, method: Method) -> Result<Classification, AccessError> {
    let n = scheme.player_count();
    if n > method.cap() {
        return Err(AccessError::CapExceeded {
            method: method.name(),
            players: n,
            cap: method.cap(),
        });
    }
    let subsets = 1u64 << n;
    let disagreement = |mask: u64, detail: String| AccessError::Disagreement {
        subset: scheme.to_labels(&mask_to_set(mask)).into_iter().collect(),
        detail,
    };

    let graphical = |mask: u64| -> Result<(bool, Witness), AccessError> {
        let s = mask_to_set(mask);
        match (authorized_witness(scheme, &s), unauthorized_witness(scheme, &s)) {
            (Some(d), None) => Ok((true, Witness::Decoder(d))),
            (None, Some(k)) => Ok((false, Witness::Blocker(k))),
            (Some(_), Some(_)) => Err(disagreement(mask, "both decoder and blocker exist".into())),
            (None, None) => Err(disagreement(mask, "neither decoder nor blocker exists".into())),
        }
    };

    let generators = if matches!(method, Method::Generators | Method::All) {
        let acc = cc_generators(scheme)?;
        let masks: Vec<u64> = acc
            .minimal_sets
            .iter()
            .map(|s| set_to_mask(&scheme.from_labels(s).expect("labels come from the scheme")))
            .collect();
        Some(masks)
    } else {
        None
    };
    let by_generators = |mask: u64| -> (bool, Option<Witness>) {
        let masks = generators.as_ref().expect("generator masks computed");
        match masks.iter().find(|&&g| g & mask == g) {
            Some(&g) => (true, Some(Witness::Generator(mask_to_set(g)))),
            None => (false, None),
        }
    };

    let pair = if matches!(method, Method::Oracle | Method::All) {
        Some(oracle::cc_pair(scheme).map_err(|e| disagreement(0, e.to_string()))?)
    } else {
        None
    };
    let by_oracle = |mask: u64| -> Result<bool, AccessError> {
        let (p0, p1) = pair.as_ref().expect("oracle pair computed");
        let s = mask_to_set(mask);
        let hidden = check_unauthorized_dense(p0, p1, &s, DEFAULT_TOL);
        let readable = check_authorized_dense(p0, p1, &s, DEFAULT_TOL);
        match (readable, hidden) {
            (true, false) => Ok(true),
            (false, true) => Ok(false),
            _ => Err(disagreement(
                mask,
                format!("dense checks inconclusive (authorized={readable}, unauthorized={hidden})"),
            )),
        }
    };

    let results: Vec<Result<(bool, Option<Witness>), AccessError>> = (0..subsets)
        .into_par_iter()
        .map(|mask| -> Result<(bool, Option<Witness>), AccessError> {
            match method {
                Method::Graphical => graphical(mask).map(|(a, w)| (a, Some(w))),
                Method::Generators => Ok(by_generators(mask)),
                Method::Oracle => by_oracle(mask).map(|a| (a, None)),
                Method::All => {
                    let (a, w) = graphical(mask)?;
                    let (b, _) = by_generators(mask);
                    let c = by_oracle(mask)?;
                    if a != b || a != c {
                        return Err(disagreement(
                            mask,
                            format!("graphical={a}, generators={b}, oracle={c}"),
                        ));
                    }
                    Ok((a, Some(w)))
                }
            }
        })
        .collect();
    // report the smallest offending subset so failures are reproducible
    if let Some((_, err)) = results
        .iter()
        .enumerate()
        .filter_map(|(m, r)| r.as_ref().err().map(|e| (m, e)))
        .min_by_key(|(m, _)| (m.count_ones(), *m))
    {
        return Err(err.clone());
    }
    let (authorized, witnesses) = results.into_iter().map(Result::unwrap).unzip();
    Ok(Classification {
        players: scheme.labels().to_vec(),
        method,
        authorized,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::access::{check_no_cloning, QqScheme};
    use crate::graph::{example_graph, Graph};

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn k2_classification() {
        let s = CcScheme::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), set(&[1])).unwrap();
        let c = classify(&s, Method::All).unwrap();
        assert!(c.is_authorized(&set(&[0, 1])));
        assert!(!c.is_authorized(&set(&[0])));
        assert!(!c.is_authorized(&set(&[1])));
        assert!(!c.is_authorized(&set(&[])));
        assert!(!check_perfect(&c));
        assert_eq!(c.minimal_structure().to_vecs(), vec![vec![0, 1]]);
    }

    #[test]
    fn single_player_is_perfect() {
        let s = CcScheme::new(Graph::empty(1), set(&[0])).unwrap();
        let c = classify(&s, Method::All).unwrap();
        assert!(check_perfect(&c));
    }

    #[test]
    fn example8_qq_classification() {
        let q = QqScheme::new(example_graph(), 0).unwrap();
        let c = classify(q.share_scheme(), Method::All).unwrap();
        assert_eq!(c.authorized_count(), 64);
        assert!(check_perfect(&c));
        assert!(c.is_monotone());
        let acc = c.minimal_structure();
        assert_eq!(acc, crate::access::qq_generators(&q).unwrap());
        assert!(check_no_cloning(&acc));
        let full = (1u64 << 7) - 1;
        assert!(matches!(c.witness(full), Some(Witness::Decoder(_))));
    }

    #[test]
    fn methods_report_caps() {
        let s = CcScheme::new(Graph::empty(13), set(&[0])).unwrap();
        assert!(matches!(
            classify(&s, Method::Oracle),
            Err(AccessError::CapExceeded { method: "oracle", .. })
        ));
        assert!(classify(&s, Method::Graphical).is_ok());
    }

    #[test]
    fn method_parsing() {
        for m in [Method::Graphical, Method::Generators, Method::Oracle, Method::All] {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }
}
