//! Slow, independent answers used only to check the fast code.
//!
//! Nothing here calls the solver or the constructions; assignments and table
//! indices are recomputed from scratch.

use crate::game::{Color, ColorBudget, GuessCount, GuessSet, Strategy};
use crate::graph::{Graph, Vertex};

/// Every colouring within `budget`, first vertex most significant.
pub fn all_colorings(budget: &[Color]) -> Vec<Vec<Color>> {
    let mut out = vec![Vec::new()];
    for &q in budget {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..q).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

fn entry_of(g: &Graph, budget: &[Color], v: Vertex, a: &[Color]) -> usize {
    g.neighbors(v).iter().fold(0, |idx, &w| idx * budget[w] as usize + a[w] as usize)
}

fn entry_total(g: &Graph, budget: &[Color], v: Vertex) -> usize {
    g.neighbors(v).iter().map(|&w| budget[w] as usize).product()
}

/// Guess sets that no other set contains: all pairs when two guesses and at
/// least two colours exist, otherwise all single colours. Enlarging a guess
/// never hurts the players, so these suffice.
fn maximal_sets(q: Color, guess_count: GuessCount) -> Vec<Vec<Color>> {
    if guess_count == GuessCount::Two && q >= 2 {
        (0..q).flat_map(|a| (a + 1..q).map(move |b| vec![a, b])).collect()
    } else {
        (0..q).map(|c| vec![c]).collect()
    }
}

type Mask = Vec<u64>;

fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

/// Exhaustive search over all players' strategies. One vertex (the one with
/// the most table entries) is not enumerated: once the others are fixed, it
/// can rescue every entry whose uncovered colours number at most its guess
/// count.
pub fn naive_players_win(g: &Graph, budget: &ColorBudget, guess_count: GuessCount) -> bool {
    let q = budget.as_slice();
    let n = g.vertex_count();
    let colorings = all_colorings(q);
    let words = colorings.len().div_ceil(64);
    let bit = |i: usize| (i / 64, 1u64 << (i % 64));

    let last = (0..n).max_by_key(|&v| (entry_total(g, q, v), std::cmp::Reverse(v))).expect("non-empty graph");

    // options[k] = the masks one enumerated table entry can cover.
    let mut options: Vec<Vec<Mask>> = Vec::new();
    for v in (0..n).filter(|&v| v != last) {
        let sets = maximal_sets(q[v], guess_count);
        let mut per_entry: Vec<Vec<Mask>> = vec![vec![vec![0; words]; sets.len()]; entry_total(g, q, v)];
        for (i, a) in colorings.iter().enumerate() {
            let e = entry_of(g, q, v, a);
            for (s, set) in sets.iter().enumerate() {
                if set.contains(&a[v]) {
                    let (w, b) = bit(i);
                    per_entry[e][s][w] |= b;
                }
            }
        }
        options.extend(per_entry);
    }
    // rescue[e][c] = assignments in entry e of the eliminated vertex with colour c there.
    let mut rescue: Vec<Vec<Mask>> = vec![vec![vec![0; words]; q[last] as usize]; entry_total(g, q, last)];
    for (i, a) in colorings.iter().enumerate() {
        let (w, b) = bit(i);
        rescue[entry_of(g, q, last, a)][a[last] as usize][w] |= b;
    }
    let allowed = guess_count.get().min(q[last] as usize);
    let rescued = |cover: &[u64]| {
        rescue.iter().all(|by_color| {
            by_color.iter().filter(|m| m.iter().zip(cover).any(|(x, c)| x & !c != 0)).count() <= allowed
        })
    };

    let depth = options.len();
    let mut prefix: Vec<Mask> = vec![vec![0; words]; depth + 1];
    let mut choice = vec![0usize; depth];
    let mut k = 0;
    // Odometer over choices with prefix unions.
    loop {
        if k == depth {
            if rescued(&prefix[depth]) {
                return true;
            }
            loop {
                if k == 0 {
                    return false;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < options[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
        let mut next = prefix[k].clone();
        or_into(&mut next, &options[k][choice[k]]);
        prefix[k + 1] = next;
        k += 1;
    }
}

/// True when the players cannot possibly cover every assignment: each
/// vertex `v` is right on at most `min(g, q_v) / q_v` of them.
pub fn counting_refutes(g: &Graph, budget: &ColorBudget, guess_count: GuessCount) -> bool {
    let q = budget.as_slice();
    let total: u128 = q.iter().map(|&c| c as u128).product();
    let covered: u128 = (0..g.vertex_count())
        .map(|v| total / q[v] as u128 * (guess_count.get() as u128).min(q[v] as u128))
        .sum();
    covered < total
}

/// Whether `strategy` is correct somewhere on every colouring in `budget`,
/// checked one colouring at a time.
pub fn wins_everywhere(strategy: &Strategy, budget: &ColorBudget) -> bool {
    let g = strategy.graph();
    !all_colorings(budget.as_slice()).iter().any(|a| {
        (0..g.vertex_count()).all(|v| {
            let seen: Vec<Color> = g.neighbors(v).iter().map(|&w| a[w]).collect();
            !strategy.guesses_for(v, &seen).contains(a[v])
        })
    })
}

/// On a complete graph with `n * g` colours: vertex `i` guesses the colours
/// that would put the colour sum, mod `n * g`, in `[i * g, i * g + g)`.
pub fn complete_graph_sum_strategy(n: usize, guess_count: GuessCount) -> Strategy {
    let g = guess_count.get() as Color;
    let q = n as Color * g;
    Strategy::from_fn(&Graph::complete(n), &ColorBudget::uniform(n, q), guess_count, |v, seen| {
        let rest: Color = seen.iter().sum::<Color>() % q;
        let target = v as Color * g;
        let guess = |j: Color| (target + j + q - rest) % q;
        if g == 1 {
            GuessSet::one(guess(0))
        } else {
            GuessSet::pair(guess(0), guess(1))
        }
    })
    .expect("valid tables")
}

/// Two guesses on the path 0-1-2 with 5 colours. When the middle colour
/// is `m`, the ends leave exactly the colour sets `{m, m+1, m+2}` and
/// `{y : m in {y, y+1, y+3}}` (mod 5) unguessed. No pair of end colours is
/// left open for three middle colours, so the middle covers the rest.
pub fn path3_two_guess_five_strategy() -> Strategy {
    let open_left = |m: Color| [m % 5, (m + 1) % 5, (m + 2) % 5];
    let open_right = |m: Color| -> Vec<Color> { (0..5).filter(|y| [*y, (y + 1) % 5, (y + 3) % 5].contains(&m)).collect() };
    let complement = |open: &[Color]| {
        let rest: Vec<Color> = (0..5).filter(|c| !open.contains(c)).collect();
        GuessSet::pair(rest[0], rest[1])
    };
    Strategy::from_fn(&Graph::path(3), &ColorBudget::uniform(3, 5), GuessCount::Two, |v, seen| match v {
        0 => complement(&open_left(seen[0])),
        2 => complement(&open_right(seen[0])),
        _ => {
            let (l, r) = (seen[0], seen[1]);
            let need: Vec<Color> = (0..5).filter(|&m| open_left(m).contains(&l) && open_right(m).contains(&r)).collect();
            match need.as_slice() {
                [] => GuessSet::pair(0, 1),
                [a] => GuessSet::pair(*a, if *a == 0 { 1 } else { 0 }),
                [a, b] => GuessSet::pair(*a, *b),
                _ => unreachable!("three middle colours leave ({l}, {r}) open"),
            }
        }
    })
    .expect("valid tables")
}

/// Uniform `q` at which the players first lose, found with
/// [`naive_players_win`] and [`counting_refutes`].
pub fn naive_hat_guessing_number(g: &Graph, guess_count: GuessCount, max_q: Color) -> Option<Color> {
    (1..=max_q).find_map(|q| {
        let budget = ColorBudget::uniform(g.vertex_count(), q);
        let lost = counting_refutes(g, &budget, guess_count) || !naive_players_win(g, &budget, guess_count);
        lost.then_some(q - 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(naive_hat_guessing_number(&Graph::empty(1), GuessCount::One, 5), Some(1));
        assert_eq!(naive_hat_guessing_number(&Graph::complete(2), GuessCount::One, 5), Some(2));
        assert_eq!(naive_hat_guessing_number(&Graph::complete(2), GuessCount::Two, 6), Some(4));
        assert_eq!(naive_hat_guessing_number(&Graph::path(3), GuessCount::One, 5), Some(2));
    }

    #[test]
    fn hand_strategies_win() {
        for n in 1..=3 {
            for gc in [GuessCount::One, GuessCount::Two] {
                let s = complete_graph_sum_strategy(n, gc);
                assert!(wins_everywhere(&s, s.budget()), "n={n} {gc}");
            }
        }
        let s = path3_two_guess_five_strategy();
        assert!(wins_everywhere(&s, s.budget()));
    }
}
