package pixelframe.event;

public interface ClickHandler {
    void onClick(int x, int y);

    default void onDoubleClick(int x, int y) {
        onClick(x, y);
    }
}
