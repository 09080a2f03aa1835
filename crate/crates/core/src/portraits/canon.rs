use serde::Serialize;

/// Isomorphism invariant of a functional digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PortraitClass {
    pub certificate: String,
    pub vertices: usize,
    pub edges: usize,
    /// Cycle lengths, largest first.
    pub cycle_lengths: Vec<usize>,
}

/// One weakly connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Cycle vertices in successor order, starting at the canonical rotation.
    pub cycle: Vec<usize>,
    pub members: Vec<usize>,
    pub code: String,
}

fn cycle_flags(succ: &[usize]) -> Vec<bool> {
    let n = succ.len();
    // 0 = unvisited, 1 = on the current walk, 2 = done
    let mut state = vec![0u8; n];
    let mut on_cycle = vec![false; n];
    for start in 0..n {
        let mut path = Vec::new();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = succ[v];
        }
        if state[v] == 1 {
            let mut w = v;
            loop {
                on_cycle[w] = true;
                w = succ[w];
                if w == v {
                    break;
                }
            }
        }
        for u in path {
            state[u] = 2;
        }
    }
    on_cycle
}

/// AHU encodings of the trees hanging off each vertex (cycle edges ignored).
fn tree_codes(succ: &[usize], on_cycle: &[bool]) -> Vec<String> {
    let n = succ.len();
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if !on_cycle[v] {
            children[succ[v]].push(v);
        }
    }
    let mut codes = vec![String::new(); n];
    // post-order without recursion
    let mut stack: Vec<(usize, bool)> = (0..n).filter(|&v| on_cycle[v]).map(|v| (v, false)).collect();
    while let Some((v, done)) = stack.pop() {
        if done {
            let mut kids: Vec<&str> = children[v].iter().map(|&c| codes[c].as_str()).collect();
            kids.sort_unstable();
            codes[v] = format!("({})", kids.concat());
        } else {
            stack.push((v, true));
            stack.extend(children[v].iter().map(|&c| (c, false)));
        }
    }
    codes
}

fn min_rotation(seq: &[&str]) -> usize {
    (0..seq.len())
        .min_by(|&a, &b| {
            let ra = seq[a..].iter().chain(&seq[..a]);
            let rb = seq[b..].iter().chain(&seq[..b]);
            ra.cmp(rb)
        })
        .unwrap_or(0)
}

/// Components of a functional graph given by its successor array.
pub fn components(succ: &[usize]) -> Vec<Component> {
    let n = succ.len();
    let on_cycle = cycle_flags(succ);
    let codes = tree_codes(succ, &on_cycle);
    let mut root = vec![usize::MAX; n];
    let mut out = Vec::new();
    for v in 0..n {
        if !on_cycle[v] || root[v] != usize::MAX {
            continue;
        }
        let mut cyc = vec![v];
        let mut w = succ[v];
        while w != v {
            cyc.push(w);
            w = succ[w];
        }
        let seq: Vec<&str> = cyc.iter().map(|&c| codes[c].as_str()).collect();
        let k = min_rotation(&seq);
        cyc.rotate_left(k);
        let code = format!("[{}]", cyc.iter().map(|&c| codes[c].as_str()).collect::<String>());
        for &c in &cyc {
            root[c] = out.len();
        }
        out.push(Component { cycle: cyc, members: Vec::new(), code });
    }
    for v in 0..n {
        // walk to the cycle; tails are short so no memo is needed
        let mut w = v;
        while root[w] == usize::MAX {
            w = succ[w];
        }
        out[root[w]].members.push(v);
    }
    out.sort_by(|a, b| a.code.cmp(&b.code));
    out
}

pub fn canonical_form(succ: &[usize]) -> PortraitClass {
    let comps = components(succ);
    let certificate = comps.iter().map(|c| c.code.as_str()).collect::<String>();
    let mut cycle_lengths: Vec<usize> = comps.iter().map(|c| c.cycle.len()).collect();
    cycle_lengths.sort_unstable_by(|a, b| b.cmp(a));
    PortraitClass { certificate, vertices: succ.len(), edges: succ.len(), cycle_lengths }
}
