#![allow(dead_code)]

use flexbound::forest::{Oval, OvalForest};
use flexbound::scheme::{CurveType, RealScheme, SchemeComponent};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random forest with exactly `n` ovals: each new oval goes inside a uniformly chosen
/// earlier oval or at top level.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize) -> OvalForest {
    let parents: Vec<Option<usize>> = (0..n)
        .map(|i| {
            let k = rng.gen_range(0..=i);
            (k < i).then_some(k)
        })
        .collect();
    fn build(parent: Option<usize>, parents: &[Option<usize>]) -> OvalForest {
        OvalForest(
            (0..parents.len())
                .filter(|&i| parents[i] == parent)
                .map(|i| Oval(build(Some(i), parents)))
                .collect(),
        )
    }
    build(None, &parents)
}

fn split<R: Rng>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut v = vec![0; parts];
    for _ in 0..total {
        v[rng.gen_range(0..parts)] += 1;
    }
    v
}

pub fn random_component<R: Rng>(rng: &mut R, ovals: usize) -> SchemeComponent {
    match rng.gen_range(0..4) {
        0 => SchemeComponent::Sphere {
            ovals: random_forest(rng, ovals),
        },
        1 => SchemeComponent::ProjectivePlane {
            odd_branch: rng.gen_bool(0.5),
            ovals: random_forest(rng, ovals),
        },
        2 => SchemeComponent::OrientableGenus {
            genus: rng.gen_range(0..4),
            ovals: random_forest(rng, ovals),
        },
        _ => {
            let l: u32 = rng.gen_range(0..5);
            let annuli = split(rng, ovals, l.max(1) as usize)
                .into_iter()
                .map(|k| random_forest(rng, k))
                .collect();
            SchemeComponent::torus(l, annuli).unwrap()
        }
    }
}

/// Random nonempty scheme with 1..=3 components and at most `max_ovals` ovals.
pub fn random_scheme<R: Rng>(rng: &mut R, max_ovals: usize) -> RealScheme {
    loop {
        let parts = rng.gen_range(1..=3);
        let total = rng.gen_range(0..=max_ovals);
        let comps = split(rng, total, parts)
            .into_iter()
            .map(|k| random_component(rng, k))
            .collect();
        if let Ok(s) = RealScheme::new(comps, CurveType::Unknown) {
            return s;
        }
    }
}

pub fn shuffle_forest<R: Rng>(rng: &mut R, f: &OvalForest) -> OvalForest {
    let mut roots: Vec<Oval> = f.0.iter().map(|o| Oval(shuffle_forest(rng, &o.0))).collect();
    roots.shuffle(rng);
    OvalForest(roots)
}

/// Same scheme with children, components and torus annuli reordered at random.
pub fn relabel<R: Rng>(rng: &mut R, s: &RealScheme) -> RealScheme {
    let mut comps: Vec<SchemeComponent> = s
        .components()
        .iter()
        .map(|c| match c {
            SchemeComponent::Sphere { ovals } => SchemeComponent::Sphere {
                ovals: shuffle_forest(rng, ovals),
            },
            SchemeComponent::ProjectivePlane { odd_branch, ovals } => SchemeComponent::ProjectivePlane {
                odd_branch: *odd_branch,
                ovals: shuffle_forest(rng, ovals),
            },
            SchemeComponent::OrientableGenus { genus, ovals } => SchemeComponent::OrientableGenus {
                genus: *genus,
                ovals: shuffle_forest(rng, ovals),
            },
            SchemeComponent::Torus {
                essential_circles,
                annuli,
            } => {
                let mut a: Vec<OvalForest> = annuli.iter().map(|f| shuffle_forest(rng, f)).collect();
                let k = rng.gen_range(0..a.len());
                a.rotate_left(k);
                if rng.gen_bool(0.5) {
                    a.reverse();
                }
                SchemeComponent::torus(*essential_circles, a).unwrap()
            }
            SchemeComponent::Explicit(x) => SchemeComponent::Explicit(x.clone()),
        })
        .collect();
    comps.shuffle(rng);
    RealScheme::new(comps, s.curve_type()).unwrap()
}

/// Independent canonical form: parse a parenthesis string into a tree and sort
/// children by their own canonical strings.
pub fn oracle_canonical(s: &str) -> String {
    fn parse(b: &[u8], i: &mut usize) -> Vec<String> {
        let mut out = Vec::new();
        while *i < b.len() && b[*i] == b'(' {
            *i += 1;
            let mut kids = parse(b, i);
            *i += 1;
            kids.sort();
            out.push(format!("({})", kids.concat()));
        }
        out
    }
    let mut i = 0;
    let mut roots = parse(s.as_bytes(), &mut i);
    roots.sort();
    roots.concat()
}

/// All balanced parenthesis strings with `n` pairs.
pub fn balanced(n: usize) -> Vec<String> {
    fn go(open: usize, close: usize, n: usize, cur: &mut String, out: &mut Vec<String>) {
        if cur.len() == 2 * n {
            out.push(cur.clone());
            return;
        }
        if open < n {
            cur.push('(');
            go(open + 1, close, n, cur, out);
            cur.pop();
        }
        if close < open {
            cur.push(')');
            go(open, close + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, n, &mut String::new(), &mut out);
    out
}
