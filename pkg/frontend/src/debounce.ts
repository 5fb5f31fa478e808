/**
 * Debounce `fn` to fire once `wait` ms after the last call. Each call
 * restarts the timer; `cancel()` drops a pending fire without running it.
 */
export function debounce<T extends (...args: any[]) => void>(fn: T, wait: number) {
  let handle: ReturnType<typeof setTimeout> | null = null;
  const debounced = (...args: Parameters<T>) => {
    if (handle !== null) clearTimeout(handle);
    handle = setTimeout(() => {
      handle = null;
      fn(...args);
    }, wait);
  };
  debounced.cancel = () => {
    if (handle !== null) {
      clearTimeout(handle);
      handle = null;
    }
  };
  return debounced as ((...args: Parameters<T>) => void) & { cancel: () => void };
}
