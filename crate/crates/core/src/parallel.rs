use rayon::{ThreadPool, ThreadPoolBuilder};

/// Worker-count setting shared by closure and rank search.
///
/// `0` means the ambient rayon pool, `1` means strictly sequential, anything
/// else a dedicated pool of that size.
pub(crate) enum Workers {
    Ambient,
    Sequential,
    Pool(ThreadPool),
}

impl Workers {
    pub fn new(threads: usize) -> Self {
        match threads {
            0 => Self::Ambient,
            1 => Self::Sequential,
            n => Self::Pool(
                ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .expect("failed to build rayon thread pool"),
            ),
        }
    }

    pub fn is_sequential(&self) -> bool {
        matches!(self, Self::Sequential)
    }

    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self {
            Self::Pool(pool) => pool.install(f),
            _ => f(),
        }
    }
}
