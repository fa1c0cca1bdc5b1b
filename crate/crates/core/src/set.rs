//! Index types (vertices, edges, darts) and fixed-capacity bitsets over
//! them. Sets are `Copy` so the enumeration loops never allocate.

use core::fmt;

/// Maximum number of vertices or edges a single graph may have.
pub const SET_CAPACITY: usize = 256;
const WORDS: usize = SET_CAPACITY / 64;

/// A vertex id, dense in `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

/// An edge id, dense in `0..m`. Parallel edges and loops get distinct ids.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub u32);

/// One of the two ends of an edge. Edge `e` owns darts `2e` and `2e+1`;
/// the edge involution pairs them and is fixed-point free by construction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Vertex {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Edge {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The two darts of this edge.
    #[inline]
    pub fn darts(self) -> (Dart, Dart) {
        (Dart(2 * self.0), Dart(2 * self.0 + 1))
    }
}

impl Dart {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The edge this dart belongs to.
    #[inline]
    pub fn edge(self) -> Edge {
        Edge(self.0 / 2)
    }

    /// The other dart of the same edge.
    #[inline]
    pub fn mate(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
struct RawSet {
    words: [u64; WORDS],
}

impl RawSet {
    const EMPTY: RawSet = RawSet { words: [0; WORDS] };

    #[inline]
    fn insert(&mut self, i: u32) {
        debug_assert!((i as usize) < SET_CAPACITY);
        self.words[(i / 64) as usize] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: u32) {
        self.words[(i / 64) as usize] &= !(1 << (i % 64));
    }

    #[inline]
    fn contains(&self, i: u32) -> bool {
        (i as usize) < SET_CAPACITY && self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.words == [0; WORDS]
    }

    fn union(&self, other: &RawSet) -> RawSet {
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words) {
            *w |= o;
        }
        out
    }

    fn intersection(&self, other: &RawSet) -> RawSet {
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words) {
            *w &= o;
        }
        out
    }

    fn difference(&self, other: &RawSet) -> RawSet {
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words) {
            *w &= !o;
        }
        out
    }

    fn is_subset_of(&self, other: &RawSet) -> bool {
        self.words
            .iter()
            .zip(other.words)
            .all(|(w, o)| w & !o == 0)
    }

    fn is_disjoint(&self, other: &RawSet) -> bool {
        self.words.iter().zip(other.words).all(|(w, o)| w & o == 0)
    }

    fn first(&self) -> Option<u32> {
        for (ix, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(ix as u32 * 64 + w.trailing_zeros());
            }
        }
        None
    }
}

#[derive(Clone)]
struct RawIter {
    words: [u64; WORDS],
    word_ix: usize,
}

impl Iterator for RawIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.word_ix < WORDS {
            let w = self.words[self.word_ix];
            if w != 0 {
                let tz = w.trailing_zeros();
                self.words[self.word_ix] = w & (w - 1);
                return Some(self.word_ix as u32 * 64 + tz);
            }
            self.word_ix += 1;
        }
        None
    }
}

macro_rules! index_set {
    ($(#[$doc:meta])* $name:ident, $item:ident) => {
        $(#[$doc])*
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(RawSet);

        impl $name {
            pub const EMPTY: $name = $name(RawSet::EMPTY);

            pub fn single(item: $item) -> $name {
                let mut s = $name::EMPTY;
                s.insert(item);
                s
            }

            #[inline]
            pub fn insert(&mut self, item: $item) {
                self.0.insert(item.0)
            }

            #[inline]
            pub fn remove(&mut self, item: $item) {
                self.0.remove(item.0)
            }

            #[inline]
            pub fn contains(&self, item: $item) -> bool {
                self.0.contains(item.0)
            }

            #[inline]
            pub fn len(&self) -> u32 {
                self.0.len()
            }

            #[inline]
            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn union(&self, other: &$name) -> $name {
                $name(self.0.union(&other.0))
            }

            pub fn intersection(&self, other: &$name) -> $name {
                $name(self.0.intersection(&other.0))
            }

            pub fn difference(&self, other: &$name) -> $name {
                $name(self.0.difference(&other.0))
            }

            pub fn is_subset_of(&self, other: &$name) -> bool {
                self.0.is_subset_of(&other.0)
            }

            pub fn is_disjoint(&self, other: &$name) -> bool {
                self.0.is_disjoint(&other.0)
            }

            pub fn first(&self) -> Option<$item> {
                self.0.first().map($item)
            }

            pub fn iter(&self) -> impl Iterator<Item = $item> {
                RawIter { words: self.0.words, word_ix: 0 }.map($item)
            }
        }

        impl FromIterator<$item> for $name {
            fn from_iter<I: IntoIterator<Item = $item>>(iter: I) -> $name {
                let mut s = $name::EMPTY;
                for item in iter {
                    s.insert(item);
                }
                s
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

index_set!(
    /// A set of vertex ids of one graph.
    VertexSet,
    Vertex
);
index_set!(
    /// A set of edge ids of one graph.
    EdgeSet,
    Edge
);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_iterate() {
        let mut s = EdgeSet::EMPTY;
        for i in [0u32, 5, 63, 64, 200, 255] {
            s.insert(Edge(i));
        }
        assert_eq!(s.len(), 6);
        assert!(s.contains(Edge(200)));
        s.remove(Edge(200));
        assert!(!s.contains(Edge(200)));
        let got: alloc::vec::Vec<u32> = s.iter().map(|e| e.0).collect();
        assert_eq!(got, alloc::vec![0, 5, 63, 64, 255]);
        assert_eq!(s.first(), Some(Edge(0)));
    }

    #[test]
    fn set_algebra() {
        let a: VertexSet = [1u32, 2, 3].into_iter().map(Vertex).collect();
        let b: VertexSet = [3u32, 4].into_iter().map(Vertex).collect();
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.intersection(&b).len(), 1);
        assert_eq!(a.difference(&b).len(), 2);
        assert!(a.intersection(&b).is_subset_of(&a));
        assert!(!a.is_disjoint(&b));
        assert!(a.difference(&b).is_disjoint(&b));
    }
}
