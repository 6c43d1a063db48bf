// Connectivity and staleness are rendered as one strip above the views.
// Losing the service never blanks results; they stay up, marked stale.

export function renderStatusBanner(connected: boolean, stale: boolean): string {
  if (!connected) {
    return (
      '<div class="banner banner-offline" data-banner="offline">' +
      "service unreachable, retrying. Shown results are stale.</div>"
    );
  }
  if (stale) {
    return (
      '<div class="banner banner-stale" data-banner="stale">' +
      "results are stale: the last refresh failed.</div>"
    );
  }
  return "";
}
