use super::maps::{fiber_of, EnrichedMap};
use crate::series::advance_odometer;

/// All crowns on `{0, .., n-1}`: a base `B`, a cyclic successor function on
/// `B`, and an assignment of every other vertex to a base vertex. Each base
/// fiber carries the single-block partition. Sorted by function table.
pub fn enumerate_crowns(n: usize) -> Vec<EnrichedMap> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let base: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let others: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
        for cycle in cyclic_orders(&base) {
            let mut f = vec![0usize; n];
            for w in 0..cycle.len() {
                f[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
            let mut attach = vec![0usize; others.len()];
            loop {
                for (&v, &b) in others.iter().zip(&attach) {
                    f[v] = base[b];
                }
                let fibers = (0..n)
                    .map(|u| {
                        let fiber = fiber_of(&f, u);
                        if fiber.is_empty() {
                            Vec::new()
                        } else {
                            vec![fiber]
                        }
                    })
                    .collect();
                out.push(EnrichedMap::new(n, 0, f.clone(), fibers).expect("crown is well formed"));
                if !advance_odometer(&mut attach, base.len()) {
                    break;
                }
            }
        }
    }
    out.sort_by(|a, b| a.function().cmp(b.function()));
    out
}

/// The `(m-1)!` cyclic orders of `items`, each starting at `items[0]`.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    let Some((&head, tail)) = items.split_first() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut rest = tail.to_vec();
    permute(&mut rest, 0, &mut |p| {
        let mut c = vec![head];
        c.extend_from_slice(p);
        out.push(c);
    });
    out
}

fn permute(items: &mut [usize], k: usize, emit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        emit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, emit);
        items.swap(k, i);
    }
}
