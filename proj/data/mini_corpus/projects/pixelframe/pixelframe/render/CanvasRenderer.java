package pixelframe.render;

public class CanvasRenderer {
    private final int width;
    private final int height;

    public CanvasRenderer(int width, int height) {
        this.width = width;
        this.height = height;
    }

    public void drawSprite(SpriteTexture sprite, int x, int y) {
        sprite.bind();
    }

    public void clear() {
        // fill with the background color
    }
}
