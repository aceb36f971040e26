// Word audio playback. Assets are fetched with the bearer token and played
// through a blob URL; a no-op fallback keeps tests and non-media DOMs happy.

import type { ApiClient } from "./api";

const cache = new Map<string, string>();

export async function playWordAudio(api: ApiClient, assetKey: string | null): Promise<boolean> {
  if (!assetKey || typeof Audio === "undefined") return false;
  try {
    let url = cache.get(assetKey);
    if (!url) {
      const blob = await api.audioBytes(assetKey);
      url = URL.createObjectURL(blob);
      cache.set(assetKey, url);
    }
    await new Audio(url).play();
    return true;
  } catch {
    return false;
  }
}
